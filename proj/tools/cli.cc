#include "cli.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "leapt/corpus.h"
#include "leapt/endpoint.h"
#include "leapt/errors.h"
#include "leapt/extractor.h"
#include "leapt/metrics.h"
#include "leapt/read_policy.h"
#include "leapt/simulator.h"
#include "leapt/toy_language.h"

namespace leapt::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kToolVersion = "leapt 0.1.0";

size_t default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

std::ofstream open_out(const fs::path& path, bool append = false) {
  std::ofstream out(path, append ? std::ios::binary | std::ios::app : std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Every option of `cmd` with its resolved value (defaults materialized).
Json resolved_options(const CLI::App& cmd) {
  Json j = Json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    if (opt->get_expected_max() == 0) {  // flag
      j[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      auto results = opt->results();
      j[name] = results.size() == 1 ? Json(results.front()) : Json(results);
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  Json config;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json summary = Json::object();
  uint64_t seed = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const fs::path& path) const {
    Json j;
    j["command"] = command;
    j["tool_version"] = kToolVersion;
    j["argv"] = argv;
    j["config"] = config;
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["summary"] = summary;
    j["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto out = open_out(path);
    out << j.dump(2) << '\n';
  }
};

fs::path manifest_path(const fs::path& primary_output) {
  return fs::path(primary_output.string() + ".manifest.json");
}

Endpoint open_spec(const std::string& spec, int timeout_ms) {
  EndpointSpec parsed = parse_endpoint_spec(spec);
  parsed.timeout = std::chrono::milliseconds(timeout_ms);
  return open_endpoint(parsed);
}

std::map<std::string, TokenSeq> references_by_sid(const std::vector<TokenSeq>& lines) {
  std::map<std::string, TokenSeq> refs;
  for (size_t i = 0; i < lines.size(); ++i) refs[std::to_string(i)] = lines[i];
  return refs;
}

// ---------------------------------------------------------------- toy-corpus

struct ToyCorpusOptions {
  std::string lexicon;
  size_t n = 0;
  size_t max_len = 10;
  uint64_t seed = 0;
  std::string out;
};

int cmd_toy_corpus(const ToyCorpusOptions& o, Manifest& manifest) {
  ToyLexicon lexicon = load_toy_lexicon(o.lexicon);
  ParallelCorpus corpus = generate_toy_corpus(lexicon, o.n, o.max_len, o.seed);
  fs::path src = o.out + ".src", tgt = o.out + ".tgt";
  write_parallel_corpus(corpus, src, tgt);
  manifest.seed = o.seed;
  manifest.inputs["lexicon"] = o.lexicon;
  manifest.outputs["src"] = src.string();
  manifest.outputs["tgt"] = tgt.string();
  manifest.summary["sentences"] = corpus.size();
  manifest.write(manifest_path(o.out));
  std::cout << "wrote " << corpus.size() << " sentence pairs to " << src.string() << " / "
            << tgt.string() << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- extract

struct ExtractOptions {
  std::string src, tgt, model, out, report;
  std::string export_src, export_tgt, resume_after;
  int timeout_ms = 30000;
  ExtractionConfig cfg;
  size_t workers = default_workers();
  bool dedupe = false;
};

int cmd_extract(const ExtractOptions& o, Manifest& manifest) {
  ParallelCorpus corpus = read_parallel_corpus(o.src, o.tgt);
  o.cfg.validate();
  EndpointSpec spec = parse_endpoint_spec(o.model);
  spec.timeout = std::chrono::milliseconds(o.timeout_ms);

  bool resuming = !o.resume_after.empty();
  ParallelCorpus todo = corpus;
  if (resuming) {
    auto it = std::find_if(corpus.begin(), corpus.end(),
                           [&](const SentencePair& p) { return p.sid == o.resume_after; });
    if (it == corpus.end()) throw ConfigError("--resume-after sid '" + o.resume_after + "' not in corpus");
    todo.assign(it + 1, corpus.end());
  }

  Endpoint endpoint;
  try {
    endpoint = open_endpoint(spec);
  } catch (const GatewayError& e) {
    std::cerr << "leapt extract: " << e.what() << '\n';
    return kExitEndpoint;
  }
  if (!endpoint.model) throw ConfigError("endpoint " + o.model + " has no translation model");

  fs::path report_path = o.report.empty() ? fs::path(o.out + ".report.jsonl") : fs::path(o.report);
  auto pairs_out = open_out(o.out, resuming);
  auto report_out = open_out(report_path, resuming);
  ExtractionResult result = extract_corpus(
      todo, *endpoint.model, o.cfg, o.workers,
      [&](const SentenceRecord& record, const std::vector<PrefixPair>& pairs) {
        for (const auto& p : pairs) pairs_out << prefix_pair_to_json_line(p) << '\n';
        report_out << sentence_record_to_json_line(record) << '\n';
        pairs_out.flush();
        report_out.flush();
      });

  const auto& r = result.report;
  manifest.inputs["src"] = o.src;
  manifest.inputs["tgt"] = o.tgt;
  manifest.inputs["model"] = spec.to_string();
  manifest.outputs["pairs"] = o.out;
  manifest.outputs["report"] = report_path.string();
  manifest.summary["processed"] = r.processed;
  manifest.summary["failed"] = r.failed;
  manifest.summary["skipped"] = r.skipped;
  manifest.summary["pairs"] = result.pairs.size();
  manifest.summary["mean_pairs_per_sentence"] = r.mean_pairs;
  Json hist = Json::object();
  for (const auto& [k, v] : r.histogram) hist[std::to_string(k)] = v;
  manifest.summary["pairs_histogram"] = hist;
  manifest.summary["last_completed_sid"] = r.last_completed_sid;

  if (!o.export_src.empty() || !o.export_tgt.empty()) {
    if (o.export_src.empty() || o.export_tgt.empty()) {
      throw ConfigError("--export-src and --export-tgt go together");
    }
    // Resumed runs export everything extracted so far.
    std::vector<PrefixPair> all = resuming ? read_prefix_pairs(o.out) : result.pairs;
    ExportReport ex = export_joint_corpus(all, corpus, o.export_src, o.export_tgt, o.dedupe);
    manifest.outputs["export_src"] = o.export_src;
    manifest.outputs["export_tgt"] = o.export_tgt;
    manifest.summary["export"] = {{"prefix_lines", ex.prefix_lines},
                                  {"original_lines", ex.original_lines},
                                  {"duplicates_dropped", ex.duplicates_dropped}};
  }
  manifest.write(manifest_path(o.out));

  std::cout << "extracted " << result.pairs.size() << " prefix pairs from " << r.processed
            << " sentences (" << r.failed << " failed, " << r.skipped
            << " skipped), mean " << r.mean_pairs << " per sentence\n";
  if (r.processed > 0 && r.failed == r.processed) {
    std::cerr << "leapt extract: every sentence failed; endpoint unusable\n";
    return kExitEndpoint;
  }
  return kExitOk;
}

// -------------------------------------------------------------------- export

struct ExportOptions {
  std::string pairs, src, tgt, out_src, out_tgt;
  bool dedupe = false;
};

int cmd_export(const ExportOptions& o, Manifest& manifest) {
  auto pairs = read_prefix_pairs(o.pairs);
  auto corpus = read_parallel_corpus(o.src, o.tgt);
  ExportReport r = export_joint_corpus(pairs, corpus, o.out_src, o.out_tgt, o.dedupe);
  manifest.inputs["pairs"] = o.pairs;
  manifest.inputs["src"] = o.src;
  manifest.inputs["tgt"] = o.tgt;
  manifest.outputs["src"] = o.out_src;
  manifest.outputs["tgt"] = o.out_tgt;
  manifest.summary["prefix_lines"] = r.prefix_lines;
  manifest.summary["original_lines"] = r.original_lines;
  manifest.summary["duplicates_dropped"] = r.duplicates_dropped;
  manifest.write(manifest_path(o.out_src));
  std::cout << "exported " << r.prefix_lines << " prefix lines + " << r.original_lines
            << " original lines (" << r.duplicates_dropped << " duplicates dropped)\n";
  return kExitOk;
}

// ---------------------------------------------------------- simulate / sweep

struct PolicyOptions {
  std::string read = "wait_k";
  size_t k = 3;
  double delta = 0.5;
  std::string script;
  std::string classifier;
  size_t span = 6;
  std::string write = "prefix";
  std::string model;
  size_t m = 0;
  int beam = kDefaultBeamSize;
  int timeout_ms = 30000;
  size_t workers = default_workers();
};

void add_policy_options(CLI::App* cmd, PolicyOptions& o, bool with_read_kind) {
  if (with_read_kind) {
    cmd->add_option("--read", o.read, "READ policy")
        ->check(CLI::IsMember({"wait_k", "threshold", "scripted", "heuristic"}));
    cmd->add_option("--k", o.k, "wait-k lag")->check(CLI::PositiveNumber);
    cmd->add_option("--delta", o.delta, "threshold on boundary probability")
        ->check(CLI::Range(0.0, 1.0));
  }
  cmd->add_option("--script", o.script, "boundary script (scripted policy)");
  cmd->add_option("--classifier", o.classifier,
                  "boundary classifier endpoint (threshold policy; defaults to --model)");
  cmd->add_option("--span", o.span, "heuristic policy: max tokens per segment")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--write", o.write, "WRITE policy")->check(CLI::IsMember({"prefix", "full"}));
  cmd->add_option("--model", o.model, "translation endpoint spec")->required();
  cmd->add_option("--m", o.m, "future words read ahead before each segment translation");
  cmd->add_option("--beam", o.beam, "beam size")->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-ms", o.timeout_ms, "external endpoint timeout")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", o.workers, "parallel sentence streams")->check(CLI::PositiveNumber);
}

struct Policies {
  Endpoint model;
  PolicyConfig read;
  WritePolicyConfig write;
};

// Returns false when an endpoint could not be opened.
bool build_policies(const PolicyOptions& o, Policies& p) {
  try {
    p.model = open_spec(o.model, o.timeout_ms);
  } catch (const GatewayError& e) {
    std::cerr << "leapt: " << e.what() << '\n';
    return false;
  }
  if (!p.model.model) throw ConfigError("endpoint " + o.model + " has no translation model");
  p.read.kind = parse_policy_kind(o.read);
  p.read.k = o.k;
  p.read.delta = o.delta;
  p.read.span = o.span;
  if (p.read.kind == PolicyKind::kScripted) {
    if (o.script.empty()) throw ConfigError("--read scripted needs --script");
    p.read.script = std::make_shared<BoundaryScript>(load_boundary_script(o.script));
  }
  if (p.read.kind == PolicyKind::kThreshold) {
    if (o.classifier.empty() || o.classifier == o.model) {
      p.read.classifier = p.model.classifier;
    } else {
      try {
        p.read.classifier = open_spec(o.classifier, o.timeout_ms).classifier;
      } catch (const GatewayError& e) {
        std::cerr << "leapt: " << e.what() << '\n';
        return false;
      }
    }
    if (!p.read.classifier) throw ConfigError("threshold policy: endpoint has no classifier");
  }
  p.write.kind = o.write == "full" ? WriteKind::kFullSentenceModel : WriteKind::kPrefixModel;
  p.write.model = p.model.model;
  p.write.m = o.m;
  p.write.beam_size = o.beam;
  p.read.validate();
  p.write.validate();
  return true;
}

struct SimulateOptions {
  std::string src;
  std::string out_traces, render, report;
  PolicyOptions policy;
};

int cmd_simulate(const SimulateOptions& o, Manifest& manifest) {
  std::vector<TokenSeq> lines = read_token_lines(o.src);
  ParallelCorpus corpus;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      throw MalformedSentenceError(o.src + ":" + std::to_string(i + 1) + ": empty sentence");
    }
    corpus.push_back({std::to_string(i), lines[i], {}});
  }
  Policies p;
  if (!build_policies(o.policy, p)) return kExitEndpoint;

  fs::path report_path =
      o.report.empty() ? fs::path(o.out_traces + ".report.jsonl") : fs::path(o.report);
  auto traces_out = open_out(o.out_traces);
  auto report_out = open_out(report_path);
  std::ofstream render_out;
  if (!o.render.empty()) render_out = open_out(o.render);

  SimulationResult result =
      simulate_corpus(corpus, p.read, p.write, o.policy.workers, [&](const DecodingTrace& t) {
        traces_out << trace_to_json_line(t) << '\n';
        report_out << trace_record_to_json_line(t) << '\n';
        if (render_out.is_open()) {
          render_out << t.sid << '\t' << (t.ok ? render_trace(t) : "ERROR " + t.detail)
                     << '\n';
        }
      });

  manifest.inputs["src"] = o.src;
  manifest.inputs["model"] = o.policy.model;
  manifest.outputs["traces"] = o.out_traces;
  manifest.outputs["report"] = report_path.string();
  if (!o.render.empty()) manifest.outputs["render"] = o.render;
  manifest.summary["sentences"] = result.report.sentences;
  manifest.summary["failed"] = result.report.failed;
  manifest.summary["incomplete"] = result.report.incomplete;
  manifest.write(manifest_path(o.out_traces));
  std::cout << "simulated " << result.report.sentences << " sentences ("
            << result.report.failed << " failed, " << result.report.incomplete
            << " incomplete)\n";
  if (result.report.sentences > 0 && result.report.failed == result.report.sentences) {
    std::cerr << "leapt simulate: every sentence failed; endpoint unusable\n";
    return kExitEndpoint;
  }
  return kExitOk;
}

// --------------------------------------------------------------------- score

struct ScoreOptions {
  std::string traces, ref, out_csv, out_report;
  std::string param_name = "run";
  double param_value = 0.0;
  bool tokenize = false;
};

int cmd_score(const ScoreOptions& o, Manifest& manifest) {
  auto traces = read_traces(o.traces);
  auto refs = references_by_sid(read_token_lines(o.ref));
  BleuOptions bleu_opts;
  bleu_opts.tokenize = o.tokenize;
  CorpusScore s = score_traces(traces, refs, bleu_opts);

  fs::path report_path =
      o.out_report.empty() ? fs::path(o.traces + ".scores.jsonl") : fs::path(o.out_report);
  {
    auto out = open_out(report_path);
    write_score_report(out, s);
  }
  if (!o.out_csv.empty()) {
    auto out = open_out(o.out_csv);
    write_sweep_csv(out, {{o.param_name, o.param_value, s.bleu.score, s.mean_al, s.n_sentences}});
    manifest.outputs["csv"] = o.out_csv;
  }
  manifest.inputs["traces"] = o.traces;
  manifest.inputs["ref"] = o.ref;
  manifest.outputs["report"] = report_path.string();
  manifest.summary["bleu"] = s.bleu.score;
  manifest.summary["mean_al"] = s.mean_al;
  manifest.summary["n_sentences"] = s.n_sentences;
  manifest.write(manifest_path(report_path));

  char line[160];
  std::snprintf(line, sizeof(line), "BLEU = %.4f  mean AL = %.4f  (%zu sentences)\n",
                s.bleu.score, s.mean_al, s.n_sentences);
  std::cout << line;
  return kExitOk;
}

// --------------------------------------------------------------------- sweep

struct SweepOptions {
  std::string src, tgt, family = "wait_k", values, out_csv, traces_dir;
  PolicyOptions policy;
  bool tokenize = false;
};

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad --values entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("--values is empty");
  return out;
}

int cmd_sweep(const SweepOptions& o, Manifest& manifest) {
  ParallelCorpus corpus = read_parallel_corpus(o.src, o.tgt);
  std::map<std::string, TokenSeq> refs;
  for (const auto& p : corpus) refs[p.sid] = p.tgt;

  PolicyOptions base = o.policy;
  base.read = o.family;
  Policies p;
  if (!build_policies(base, p)) return kExitEndpoint;

  const bool wait_k = o.family == "wait_k";
  std::vector<SweepRun> runs;
  for (double v : parse_values(o.values)) {
    PolicyConfig read = p.read;
    if (wait_k) {
      if (v < 1 || v != std::floor(v)) throw ConfigError("wait_k values must be integers >= 1");
      read.k = static_cast<size_t>(v);
    } else {
      read.delta = v;
    }
    read.validate();
    SimulationResult sim = simulate_corpus(corpus, read, p.write, base.workers);
    if (!o.traces_dir.empty()) {
      fs::create_directories(o.traces_dir);
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%.4f.traces.jsonl", wait_k ? "k" : "delta", v);
      auto out = open_out(fs::path(o.traces_dir) / name);
      for (const auto& t : sim.traces) out << trace_to_json_line(t) << '\n';
    }
    runs.push_back({v, std::move(sim.traces)});
  }
  BleuOptions bleu_opts;
  bleu_opts.tokenize = o.tokenize;
  auto points = sweep(wait_k ? "k" : "delta", runs, refs, bleu_opts);
  {
    auto out = open_out(o.out_csv);
    write_sweep_csv(out, points);
  }
  manifest.inputs["src"] = o.src;
  manifest.inputs["tgt"] = o.tgt;
  manifest.inputs["model"] = base.model;
  manifest.outputs["csv"] = o.out_csv;
  manifest.summary["points"] = points.size();
  manifest.write(manifest_path(o.out_csv));
  write_sweep_csv(std::cout, points);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"LEAPT prefix-to-prefix toolkit for simultaneous translation", "leapt"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  app.set_version_flag("--version", kToolVersion);
  app.option_defaults()->always_capture_default();

  ToyCorpusOptions toy;
  auto* toy_cmd = app.add_subcommand("toy-corpus", "generate a synthetic parallel corpus");
  toy_cmd->add_option("--lexicon", toy.lexicon, "toy lexicon JSON")->required();
  toy_cmd->add_option("--n", toy.n, "number of sentences")->required()->check(CLI::PositiveNumber);
  toy_cmd->add_option("--max-len", toy.max_len, "maximum source length")
      ->check(CLI::PositiveNumber);
  toy_cmd->add_option("--seed", toy.seed, "random seed");
  toy_cmd->add_option("--out", toy.out, "output prefix (.src/.tgt)")->required();

  ExtractOptions ex;
  auto* ex_cmd = app.add_subcommand("extract", "extract pseudo prefix pairs");
  ex_cmd->add_option("--src", ex.src, "source corpus")->required();
  ex_cmd->add_option("--tgt", ex.tgt, "target corpus")->required();
  ex_cmd->add_option("--model", ex.model, "translation endpoint spec")->required();
  ex_cmd->add_option("--timeout-ms", ex.timeout_ms, "external endpoint timeout")
      ->check(CLI::PositiveNumber);
  ex_cmd->add_option("--beam", ex.cfg.beam_size, "full-sentence candidates to match against")
      ->check(CLI::PositiveNumber);
  ex_cmd->add_option("--m", ex.cfg.m, "future words per pair (0 = basic)");
  ex_cmd->add_flag("--include-full-pair", ex.cfg.include_full_pair,
                   "keep the t = T pair equal to the best full translation");
  ex_cmd->add_option("--max-source-len", ex.cfg.max_source_len, "skip longer sentences")
      ->check(CLI::PositiveNumber);
  ex_cmd->add_option("--workers", ex.workers, "parallel sentences")->check(CLI::PositiveNumber);
  ex_cmd->add_option("--out", ex.out, "prefix-pair JSONL output")->required();
  ex_cmd->add_option("--report", ex.report, "per-sentence report (default <out>.report.jsonl)");
  ex_cmd->add_option("--export-src", ex.export_src, "also write joint corpus source side");
  ex_cmd->add_option("--export-tgt", ex.export_tgt, "also write joint corpus target side");
  ex_cmd->add_flag("--dedupe", ex.dedupe, "drop duplicate rows from the joint corpus");
  ex_cmd->add_option("--resume-after", ex.resume_after,
                     "append to existing outputs, starting after this sid");

  ExportOptions exp;
  auto* exp_cmd = app.add_subcommand("export", "write the joint training corpus");
  exp_cmd->add_option("--pairs", exp.pairs, "prefix-pair JSONL")->required();
  exp_cmd->add_option("--src", exp.src, "original source corpus")->required();
  exp_cmd->add_option("--tgt", exp.tgt, "original target corpus")->required();
  exp_cmd->add_option("--out-src", exp.out_src, "joint source output")->required();
  exp_cmd->add_option("--out-tgt", exp.out_tgt, "joint target output")->required();
  exp_cmd->add_flag("--dedupe", exp.dedupe, "drop duplicate rows");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "stream a corpus through READ/WRITE policies");
  sim_cmd->add_option("--src", sim.src, "source sentences")->required();
  sim_cmd->add_option("--out-traces", sim.out_traces, "trace JSONL output")->required();
  sim_cmd->add_option("--render", sim.render, "WAIT*i rendering output");
  sim_cmd->add_option("--report", sim.report, "per-sentence report");
  add_policy_options(sim_cmd, sim.policy, true);

  ScoreOptions sc;
  auto* sc_cmd = app.add_subcommand("score", "BLEU and Average Lagging for traces");
  sc_cmd->add_option("--traces", sc.traces, "trace JSONL")->required();
  sc_cmd->add_option("--ref", sc.ref, "reference target file (line i = sid i)")->required();
  sc_cmd->add_option("--out-csv", sc.out_csv, "single-row CSV");
  sc_cmd->add_option("--out-report", sc.out_report, "per-sentence AL report");
  sc_cmd->add_option("--param-name", sc.param_name, "CSV param_name");
  sc_cmd->add_option("--param-value", sc.param_value, "CSV param_value");
  sc_cmd->add_flag("--tokenize", sc.tokenize, "split punctuation before BLEU");

  SweepOptions sw;
  auto* sw_cmd = app.add_subcommand("sweep", "quality/latency curve over k or delta");
  sw_cmd->add_option("--src", sw.src, "source corpus")->required();
  sw_cmd->add_option("--tgt", sw.tgt, "reference corpus")->required();
  sw_cmd->add_option("--family", sw.family, "policy family")
      ->check(CLI::IsMember({"wait_k", "threshold"}));
  sw_cmd->add_option("--values", sw.values, "comma-separated k or delta values")->required();
  sw_cmd->add_option("--out-csv", sw.out_csv, "curve CSV")->required();
  sw_cmd->add_option("--traces-dir", sw.traces_dir, "also keep traces per value");
  sw_cmd->add_flag("--tokenize", sw.tokenize, "split punctuation before BLEU");
  add_policy_options(sw_cmd, sw.policy, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Manifest manifest;
  manifest.command = cmd->get_name();
  manifest.argv = args;
  manifest.config = resolved_options(*cmd);

  try {
    if (cmd == toy_cmd) return cmd_toy_corpus(toy, manifest);
    if (cmd == ex_cmd) return cmd_extract(ex, manifest);
    if (cmd == exp_cmd) return cmd_export(exp, manifest);
    if (cmd == sim_cmd) return cmd_simulate(sim, manifest);
    if (cmd == sc_cmd) return cmd_score(sc, manifest);
    if (cmd == sw_cmd) return cmd_sweep(sw, manifest);
  } catch (const GatewayError& e) {
    std::cerr << "leapt " << cmd->get_name() << ": endpoint error: " << e.what() << '\n';
    return kExitEndpoint;
  } catch (const Error& e) {
    std::cerr << "leapt " << cmd->get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace leapt::cli
