#include "leapt/extractor.h"

#include <fstream>
#include <set>

#include <json.hpp>

#include "leapt/errors.h"
#include "ordered_pool.h"

namespace leapt {

using Json = nlohmann::ordered_json;

TokenSeq PrefixPair::source_line() const {
  TokenSeq line = src_prefix;
  if (!fw.empty()) {
    line.emplace_back(kFutureWordsMarker);
    line.insert(line.end(), fw.begin(), fw.end());
  }
  return line;
}

void ExtractionConfig::validate() const {
  if (beam_size < 1) throw ConfigError("beam_size must be >= 1");
  if (max_source_len < 1) throw ConfigError("max_source_len must be >= 1");
}

std::vector<PrefixPair> extract_prefix_pairs(const SentencePair& pair,
                                             TranslationModel& model,
                                             const ExtractionConfig& cfg,
                                             std::vector<std::string>* notes) {
  cfg.validate();
  const TokenSeq& x = pair.src;
  const size_t n = x.size();
  if (n == 0) throw MalformedSentenceError("sentence " + pair.sid + " has no source");

  const CandidateSet full = translate(model, {x, {}, cfg.beam_size});

  std::vector<PrefixPair> out;
  TokenSeq committed;  // target prefix of the last accepted boundary
  for (size_t t = 1; t <= n; ++t) {
    TranslateRequest req{TokenSeq(x.begin(), x.begin() + t), committed, cfg.beam_size};
    TokenSeq hyp = translate(model, req).best();
    if (hyp.empty()) {
      if (notes) notes->push_back("empty translation at t=" + std::to_string(t));
      continue;
    }
    // Forcing guarantees `committed` is a prefix of hyp; equal length means
    // nothing new was produced.
    if (hyp.size() == committed.size()) continue;
    if (!is_prefix_of_candidates(hyp, full)) continue;
    if (t == n && hyp == full.best() && !cfg.include_full_pair) continue;

    PrefixPair p;
    p.sid = pair.sid;
    p.t = t;
    p.src_prefix = std::move(req.src);
    p.fw.assign(x.begin() + t, x.begin() + std::min(n, t + cfg.m));
    p.tgt_prefix = hyp;
    out.push_back(std::move(p));
    committed = std::move(hyp);
  }
  return out;
}

ExtractionResult extract_corpus(const ParallelCorpus& corpus, TranslationModel& model,
                                const ExtractionConfig& cfg, size_t workers,
                                const ExtractionSink& sink) {
  cfg.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");

  struct Outcome {
    SentenceRecord record;
    std::vector<PrefixPair> pairs;
    bool skipped = false;
  };

  ExtractionResult result;
  auto& report = result.report;
  size_t extracted = 0;
  size_t total_pairs = 0;

  detail::run_ordered(
      corpus.size(), workers,
      [&](size_t i) {
        const SentencePair& sp = corpus[i];
        Outcome o;
        o.record.sid = sp.sid;
        if (sp.src.size() > cfg.max_source_len) {
          o.skipped = true;
          o.record.detail = "skipped: source length " + std::to_string(sp.src.size()) +
                            " exceeds max_source_len " +
                            std::to_string(cfg.max_source_len);
          return o;
        }
        try {
          std::vector<std::string> notes;
          o.pairs = extract_prefix_pairs(sp, model, cfg, &notes);
          o.record.pairs = o.pairs.size();
          for (const auto& note : notes) {
            if (!o.record.detail.empty()) o.record.detail += "; ";
            o.record.detail += note;
          }
        } catch (const std::exception& e) {
          o.record.ok = false;
          o.record.detail = e.what();
          o.pairs.clear();
        }
        return o;
      },
      [&](size_t, Outcome& o) {
        ++report.processed;
        if (!o.record.ok) {
          ++report.failed;
        } else if (o.skipped) {
          ++report.skipped;
        } else {
          ++extracted;
          total_pairs += o.pairs.size();
          ++report.histogram[o.pairs.size()];
        }
        report.last_completed_sid = o.record.sid;
        if (sink) sink(o.record, o.pairs);
        report.records.push_back(o.record);
        result.pairs.insert(result.pairs.end(), std::make_move_iterator(o.pairs.begin()),
                            std::make_move_iterator(o.pairs.end()));
      });

  report.mean_pairs =
      extracted ? static_cast<double>(total_pairs) / static_cast<double>(extracted) : 0.0;
  return result;
}

ExportReport export_joint_corpus(const std::vector<PrefixPair>& pairs,
                                 const ParallelCorpus& originals,
                                 const std::filesystem::path& out_src,
                                 const std::filesystem::path& out_tgt, bool dedupe) {
  std::ofstream src(out_src, std::ios::binary);
  if (!src) throw IoError("export: cannot write " + out_src.string());
  std::ofstream tgt(out_tgt, std::ios::binary);
  if (!tgt) throw IoError("export: cannot write " + out_tgt.string());

  ExportReport report;
  std::set<std::pair<std::string, std::string>> seen;
  auto emit = [&](const std::string& s, const std::string& t) {
    if (dedupe && !seen.emplace(s, t).second) {
      ++report.duplicates_dropped;
      return false;
    }
    src << s << '\n';
    tgt << t << '\n';
    return true;
  };
  for (const auto& p : pairs) {
    if (emit(join_tokens(p.source_line()), join_tokens(p.tgt_prefix))) {
      ++report.prefix_lines;
    }
  }
  for (const auto& o : originals) {
    if (emit(join_tokens(o.src), join_tokens(o.tgt))) ++report.original_lines;
  }
  if (!src.flush()) throw IoError("export: write failed for " + out_src.string());
  if (!tgt.flush()) throw IoError("export: write failed for " + out_tgt.string());
  return report;
}

std::string prefix_pair_to_json_line(const PrefixPair& pair) {
  Json j;
  j["sid"] = pair.sid;
  j["t"] = pair.t;
  j["src"] = pair.src_prefix;
  j["fw"] = pair.fw;
  j["tgt"] = pair.tgt_prefix;
  return j.dump();
}

void write_prefix_pairs(std::ostream& out, const std::vector<PrefixPair>& pairs) {
  for (const auto& p : pairs) out << prefix_pair_to_json_line(p) << '\n';
}

std::vector<PrefixPair> read_prefix_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<PrefixPair> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = Json::parse(line);
      out.push_back({j.at("sid").get<std::string>(), j.at("t").get<size_t>(),
                     j.at("src").get<TokenSeq>(), j.at("fw").get<TokenSeq>(),
                     j.at("tgt").get<TokenSeq>()});
    } catch (const Json::exception& e) {
      throw MalformedSentenceError(path.string() + ":" + std::to_string(line_no) + ": " +
                                   e.what());
    }
  }
  return out;
}

std::string sentence_record_to_json_line(const SentenceRecord& record) {
  Json j;
  j["sid"] = record.sid;
  j["status"] = record.ok ? "ok" : "error";
  j["pairs"] = record.pairs;
  j["detail"] = record.detail;
  return j.dump();
}

}  // namespace leapt
