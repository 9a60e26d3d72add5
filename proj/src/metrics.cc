#include "leapt/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <json.hpp>

#include "leapt/errors.h"

namespace leapt {

namespace {

constexpr size_t kMaxOrder = 4;

using NgramCounts = std::map<std::vector<std::string_view>, size_t>;

NgramCounts count_ngrams(std::span<const Token> tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> key(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[std::move(key)];
  }
  return counts;
}

std::string format4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

TokenSeq split_punctuation(std::span<const Token> tokens) {
  TokenSeq out;
  for (const auto& tok : tokens) {
    std::string cur;
    for (char c : tok) {
      if (std::ispunct(static_cast<unsigned char>(c))) {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
        out.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
  }
  return out;
}

BleuScore corpus_bleu(std::span<const TokenSeq> hypotheses,
                      std::span<const TokenSeq> references, const BleuOptions& options) {
  if (hypotheses.size() != references.size()) {
    throw MetricInputError("corpus_bleu: " + std::to_string(hypotheses.size()) +
                           " hypotheses vs " + std::to_string(references.size()) +
                           " references");
  }
  if (references.empty()) throw MetricInputError("corpus_bleu: no references");

  BleuScore s;
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    TokenSeq hyp_tok, ref_tok;
    std::span<const Token> hyp = hypotheses[i], ref = references[i];
    if (options.tokenize) {
      hyp_tok = split_punctuation(hyp);
      ref_tok = split_punctuation(ref);
      hyp = hyp_tok;
      ref = ref_tok;
    }
    s.hyp_len += hyp.size();
    s.ref_len += ref.size();
    for (size_t n = 1; n <= kMaxOrder; ++n) {
      NgramCounts h = count_ngrams(hyp, n);
      NgramCounts r = count_ngrams(ref, n);
      for (const auto& [gram, count] : h) {
        s.totals[n - 1] += count;
        auto it = r.find(gram);
        if (it != r.end()) s.matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  if (s.hyp_len == 0) {
    s.all_empty = true;
    s.brevity_penalty = 0.0;
    return s;
  }

  double log_sum = 0.0;
  for (size_t n = 0; n < kMaxOrder; ++n) {
    if (s.totals[n] == 0) continue;
    ++s.effective_order;
    double p = s.matches[n] == 0
                   ? options.epsilon
                   : static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]);
    s.precisions[n] = p;
    log_sum += std::log(p);
  }
  s.brevity_penalty =
      s.hyp_len < s.ref_len
          ? std::exp(1.0 - static_cast<double>(s.ref_len) / static_cast<double>(s.hyp_len))
          : 1.0;
  s.score = 100.0 * s.brevity_penalty *
            std::exp(log_sum / static_cast<double>(s.effective_order));
  return s;
}

LatencyScore average_lagging(std::span<const size_t> g, size_t src_len, size_t hyp_len) {
  if (src_len < 1) throw MetricInputError("average_lagging: src_len must be >= 1");
  if (hyp_len < 1) throw MetricInputError("average_lagging: hyp_len must be >= 1");
  if (g.size() != hyp_len) {
    throw MetricInputError("average_lagging: g has " + std::to_string(g.size()) +
                           " entries for hyp_len " + std::to_string(hyp_len));
  }
  for (size_t t = 0; t < g.size(); ++t) {
    if (g[t] > src_len) throw MetricInputError("average_lagging: g exceeds src_len");
    if (t > 0 && g[t] < g[t - 1]) throw MetricInputError("average_lagging: g decreases");
  }

  LatencyScore s;
  s.r = static_cast<double>(hyp_len) / static_cast<double>(src_len);
  s.tau = hyp_len;
  for (size_t t = 0; t < g.size(); ++t) {
    if (g[t] == src_len) {
      s.tau = t + 1;
      break;
    }
  }
  double sum = 0.0;
  for (size_t t = 0; t < s.tau; ++t) {
    sum += static_cast<double>(g[t]) - static_cast<double>(t) / s.r;
  }
  s.al = sum / static_cast<double>(s.tau);
  return s;
}

CorpusScore score_traces(const std::vector<DecodingTrace>& traces,
                         const std::map<std::string, TokenSeq>& references,
                         const BleuOptions& options) {
  std::vector<std::string> missing;
  std::map<std::string, const DecodingTrace*> by_sid;
  for (const auto& t : traces) {
    by_sid[t.sid] = &t;
    if (!references.count(t.sid)) missing.push_back(t.sid);
  }
  for (const auto& [sid, _] : references) {
    if (!by_sid.count(sid)) missing.push_back(sid);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& sid : missing) list += (list.empty() ? "" : ", ") + sid;
    throw AlignmentError("traces and references disagree on sids: " + list, missing);
  }

  CorpusScore score;
  std::vector<TokenSeq> hyps, refs;
  double al_sum = 0.0;
  size_t al_count = 0;
  for (const auto& t : traces) {
    hyps.push_back(t.hypothesis);
    refs.push_back(references.at(t.sid));
    if (t.hypothesis.empty()) {
      ++score.without_latency;
      continue;
    }
    double al = average_lagging(t.g, t.source_length(), t.hypothesis.size()).al;
    score.per_sentence.push_back({t.sid, al});
    al_sum += al;
    ++al_count;
  }
  score.n_sentences = traces.size();
  if (!traces.empty()) score.bleu = corpus_bleu(hyps, refs, options);
  score.mean_al = al_count ? al_sum / static_cast<double>(al_count) : 0.0;
  return score;
}

std::vector<QualityLatencyPoint> sweep(const std::string& param_name,
                                       const std::vector<SweepRun>& runs,
                                       const std::map<std::string, TokenSeq>& references,
                                       const BleuOptions& options) {
  std::vector<QualityLatencyPoint> points;
  for (const auto& run : runs) {
    CorpusScore s = score_traces(run.traces, references, options);
    if (s.n_sentences == 0) throw MetricInputError("sweep point with no sentences");
    points.push_back({param_name, run.param_value, s.bleu.score, s.mean_al, s.n_sentences});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.param_value < b.param_value; });
  return points;
}

void write_sweep_csv(std::ostream& out, const std::vector<QualityLatencyPoint>& points) {
  out << "param_name,param_value,bleu,mean_al,n_sentences\n";
  for (const auto& p : points) {
    out << p.param_name << ',' << format4(p.param_value) << ',' << format4(p.bleu) << ','
        << format4(p.mean_al) << ',' << p.n_sentences << '\n';
  }
}

void write_score_report(std::ostream& out, const CorpusScore& score) {
  using Json = nlohmann::ordered_json;
  for (const auto& s : score.per_sentence) {
    Json j;
    j["sid"] = s.sid;
    j["al"] = s.al;
    out << j.dump() << '\n';
  }
  Json summary;
  summary["bleu"] = score.bleu.score;
  summary["precisions"] = score.bleu.precisions;
  summary["brevity_penalty"] = score.bleu.brevity_penalty;
  summary["hyp_len"] = score.bleu.hyp_len;
  summary["ref_len"] = score.bleu.ref_len;
  summary["effective_order"] = score.bleu.effective_order;
  summary["all_empty"] = score.bleu.all_empty;
  summary["mean_al"] = score.mean_al;
  summary["al_units"] = "tokens";
  summary["n_sentences"] = score.n_sentences;
  summary["without_latency"] = score.without_latency;
  Json j;
  j["summary"] = std::move(summary);
  out << j.dump() << '\n';
}

}  // namespace leapt
