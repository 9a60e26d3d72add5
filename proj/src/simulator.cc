#include "leapt/simulator.h"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "leapt/errors.h"
#include "ordered_pool.h"

namespace leapt {

using Json = nlohmann::ordered_json;

size_t DecodingTrace::source_length() const {
  return static_cast<size_t>(std::count_if(events.begin(), events.end(), [](const TraceEvent& e) {
    return e.kind == EventKind::kRead;
  }));
}

DecodingTrace make_trace(std::string sid,
                         const std::vector<std::pair<EventKind, Token>>& events) {
  DecodingTrace trace;
  trace.sid = std::move(sid);
  size_t read = 0;
  for (const auto& [kind, tok] : events) {
    if (kind == EventKind::kRead) {
      ++read;
    } else {
      trace.hypothesis.push_back(tok);
      trace.g.push_back(read);
    }
    trace.events.push_back({kind, tok, read});
  }
  return trace;
}

void validate_trace(const DecodingTrace& trace) {
  auto fail = [&](const std::string& what) {
    throw MalformedSentenceError("trace " + trace.sid + ": " + what);
  };
  size_t read = 0;
  TokenSeq hyp;
  std::vector<size_t> g;
  for (const auto& e : trace.events) {
    if (e.kind == EventKind::kRead) {
      ++read;
    } else {
      hyp.push_back(e.token);
      g.push_back(read);
    }
    if (e.src_read_count != read) fail("src_read_count out of step");
  }
  if (hyp != trace.hypothesis) fail("hypothesis differs from WRITE tokens");
  if (g != trace.g) fail("g differs from event list");
}

void WritePolicyConfig::validate() const {
  if (!model) throw ConfigError("write policy needs a model endpoint");
  if (beam_size < 1) throw ConfigError("beam_size must be >= 1");
  if (m > 0 && kind != WriteKind::kPrefixModel) {
    throw ConfigError("future words (m > 0) need a prefix model");
  }
}

namespace {

class Stream {
 public:
  Stream(const std::string& sid, const TokenSeq& src, const WritePolicyConfig& write)
      : src_(src), write_(write) {
    trace_.sid = sid;
  }

  void read_next() {
    ++read_;
    trace_.events.push_back({EventKind::kRead, src_[read_ - 1], read_});
  }
  void read_until(size_t count) {
    while (read_ < count) read_next();
  }
  void write(const Token& tok) {
    trace_.events.push_back({EventKind::kWrite, tok, read_});
    trace_.hypothesis.push_back(tok);
    trace_.g.push_back(read_);
  }

  // Model continuation of the committed output for src[0..pos), plus up to
  // `look` future words after "[fw]"; end-of-sequence and anything after
  // it is dropped.
  TokenSeq continuation(size_t pos, size_t look) const {
    TranslateRequest req;
    req.src.assign(src_.begin(), src_.begin() + pos);
    if (look > 0) {
      req.src.emplace_back(kFutureWordsMarker);
      req.src.insert(req.src.end(), src_.begin() + pos, src_.begin() + pos + look);
    }
    req.forced_tgt = trace_.hypothesis;
    req.beam_size = write_.beam_size;
    const CandidateSet set = translate(*write_.model, req);
    const TokenSeq& best = set.best();
    auto begin = best.begin() + trace_.hypothesis.size();
    auto end = std::find(begin, best.end(), kEndOfSequence);
    return TokenSeq(begin, end);
  }

  std::span<const Token> source_prefix(size_t pos) const {
    return std::span<const Token>(src_).first(pos);
  }
  const TokenSeq& committed() const { return trace_.hypothesis; }
  size_t read_count() const { return read_; }
  DecodingTrace take() { return std::move(trace_); }

 private:
  const TokenSeq& src_;
  const WritePolicyConfig& write_;
  DecodingTrace trace_;
  size_t read_ = 0;
};

void run_wait_k(Stream& s, ReadPolicy& policy, size_t n) {
  for (size_t pos = 1; pos <= n; ++pos) {
    s.read_next();
    if (pos == n) {
      policy.decide(s.source_prefix(pos), s.committed(), true);
      for (const auto& tok : s.continuation(pos, 0)) s.write(tok);
      return;
    }
    while (policy.decide(s.source_prefix(pos), s.committed(), false).segment()) {
      TokenSeq cont = s.continuation(pos, 0);
      if (cont.empty()) break;
      s.write(cont.front());
    }
  }
}

void run_segments(Stream& s, ReadPolicy& policy, size_t n, size_t m) {
  for (size_t pos = 1; pos <= n; ++pos) {
    // Look-ahead may already have read this position.
    if (s.read_count() < pos) s.read_next();
    const bool exhausted = pos == n;
    if (!policy.decide(s.source_prefix(pos), s.committed(), exhausted).segment()) continue;
    const size_t look = std::min(m, n - pos);
    s.read_until(pos + look);
    for (const auto& tok : s.continuation(pos, look)) s.write(tok);
  }
}

}  // namespace

DecodingTrace simulate_sentence(const std::string& sid, const TokenSeq& src,
                                const PolicyConfig& read, const WritePolicyConfig& write) {
  write.validate();
  if (src.empty()) throw MalformedSentenceError("sentence " + sid + " has no source");
  if (read.kind == PolicyKind::kWaitK && write.m > 0) {
    throw ConfigError("wait_k does not take future words; use m = 0");
  }
  ReadPolicy policy(read, sid);
  Stream stream(sid, src, write);
  if (read.kind == PolicyKind::kWaitK) {
    run_wait_k(stream, policy, src.size());
  } else {
    run_segments(stream, policy, src.size(), write.m);
  }
  DecodingTrace trace = stream.take();
  if (trace.hypothesis.empty()) {
    trace.complete = false;
    trace.detail = "final segment produced no output";
  }
  return trace;
}

std::string render_trace(const DecodingTrace& trace) {
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  size_t run = 0;
  auto flush = [&] {
    if (run == 1) append("WAIT");
    if (run > 1) append("WAIT*" + std::to_string(run));
    run = 0;
  };
  for (const auto& e : trace.events) {
    if (e.kind == EventKind::kRead) {
      ++run;
    } else {
      flush();
      append(e.token);
    }
  }
  flush();
  return out;
}

SimulationResult simulate_corpus(const ParallelCorpus& corpus, const PolicyConfig& read,
                                 const WritePolicyConfig& write, size_t workers,
                                 const TraceSink& sink) {
  read.validate();
  write.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
  SimulationResult result;
  detail::run_ordered(
      corpus.size(), workers,
      [&](size_t i) {
        const SentencePair& sp = corpus[i];
        try {
          return simulate_sentence(sp.sid, sp.src, read, write);
        } catch (const std::exception& e) {
          DecodingTrace failed;
          failed.sid = sp.sid;
          failed.ok = false;
          failed.complete = false;
          failed.detail = e.what();
          return failed;
        }
      },
      [&](size_t, DecodingTrace& trace) {
        ++result.report.sentences;
        if (!trace.ok) {
          ++result.report.failed;
        } else if (!trace.complete) {
          ++result.report.incomplete;
        }
        if (sink) sink(trace);
        result.traces.push_back(std::move(trace));
      });
  return result;
}

std::string trace_to_json_line(const DecodingTrace& trace) {
  Json j;
  j["sid"] = trace.sid;
  Json events = Json::array();
  for (const auto& e : trace.events) {
    Json ev;
    ev["k"] = e.kind == EventKind::kRead ? "R" : "W";
    ev["tok"] = e.token;
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  j["g"] = trace.g;
  j["hyp"] = trace.hypothesis;
  if (!trace.ok) j["error"] = trace.detail;
  return j.dump();
}

DecodingTrace trace_from_json_line(const std::string& line) {
  std::vector<std::pair<EventKind, Token>> events;
  Json j;
  try {
    j = Json::parse(line);
    for (const auto& ev : j.at("events")) {
      std::string k = ev.at("k").get<std::string>();
      if (k != "R" && k != "W") throw MalformedSentenceError("bad event kind '" + k + "'");
      events.emplace_back(k == "R" ? EventKind::kRead : EventKind::kWrite,
                          ev.at("tok").get<Token>());
    }
  } catch (const Json::exception& e) {
    throw MalformedSentenceError(std::string("bad trace line: ") + e.what());
  }
  DecodingTrace trace = make_trace(j.at("sid").get<std::string>(), events);
  if (j.contains("error")) {
    trace.ok = false;
    trace.complete = false;
    trace.detail = j["error"].get<std::string>();
  } else if (trace.hypothesis.empty()) {
    trace.complete = false;
  }
  if (j.at("g").get<std::vector<size_t>>() != trace.g ||
      j.at("hyp").get<TokenSeq>() != trace.hypothesis) {
    throw MalformedSentenceError("trace " + trace.sid + ": stored g/hyp disagree with events");
  }
  return trace;
}

std::vector<DecodingTrace> read_traces(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<DecodingTrace> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(trace_from_json_line(line));
  }
  return out;
}

std::string trace_record_to_json_line(const DecodingTrace& trace) {
  Json j;
  j["sid"] = trace.sid;
  j["status"] = trace.ok ? "ok" : "error";
  j["writes"] = trace.hypothesis.size();
  j["complete"] = trace.complete;
  j["detail"] = trace.detail;
  return j.dump();
}

}  // namespace leapt
