#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "leapt/simulator.h"
#include "leapt/tokens.h"

namespace leapt {

struct BleuOptions {
  // Floor for an order with candidates but no matches.
  double epsilon = 1e-16;
  // Split ASCII punctuation off tokens before scoring.
  bool tokenize = false;
};

struct BleuScore {
  double score = 0.0;  // [0, 100]
  // Per-order precision as a fraction in [0, 1]; 0 for orders without
  // candidate n-grams.
  std::array<double, 4> precisions{};
  double brevity_penalty = 1.0;
  size_t hyp_len = 0;
  size_t ref_len = 0;
  std::array<size_t, 4> matches{};
  std::array<size_t, 4> totals{};
  // Orders with at least one candidate n-gram; the geometric mean runs
  // over these only.
  size_t effective_order = 0;
  bool all_empty = false;
};

// Case-sensitive corpus BLEU-4 with clipped counts pooled over the corpus.
BleuScore corpus_bleu(std::span<const TokenSeq> hypotheses,
                      std::span<const TokenSeq> references,
                      const BleuOptions& options = {});

// "word," -> "word ,"; used by BleuOptions::tokenize.
TokenSeq split_punctuation(std::span<const Token> tokens);

struct LatencyScore {
  double al = 0.0;  // source tokens
  size_t tau = 0;
  double r = 0.0;
};

// Average Lagging over the per-write read counts g (1-based positions in
// the formula, g[0] here is the first write).
LatencyScore average_lagging(std::span<const size_t> g, size_t src_len, size_t hyp_len);

struct SentenceLatency {
  std::string sid;
  double al = 0.0;
};

struct CorpusScore {
  BleuScore bleu;
  double mean_al = 0.0;  // over sentences with a non-empty hypothesis
  std::vector<SentenceLatency> per_sentence;
  size_t n_sentences = 0;
  size_t without_latency = 0;
};

// Scores traces against references matched by sid. Throws AlignmentError
// when either side has sids the other lacks.
CorpusScore score_traces(const std::vector<DecodingTrace>& traces,
                         const std::map<std::string, TokenSeq>& references,
                         const BleuOptions& options = {});

struct QualityLatencyPoint {
  std::string param_name;
  double param_value = 0.0;
  double bleu = 0.0;
  double mean_al = 0.0;
  size_t n_sentences = 0;
};

struct SweepRun {
  double param_value = 0.0;
  std::vector<DecodingTrace> traces;
};

// One point per run, sorted by parameter value.
std::vector<QualityLatencyPoint> sweep(const std::string& param_name,
                                       const std::vector<SweepRun>& runs,
                                       const std::map<std::string, TokenSeq>& references,
                                       const BleuOptions& options = {});

void write_sweep_csv(std::ostream& out, const std::vector<QualityLatencyPoint>& points);

// Per-sentence {"sid","al"} lines followed by one {"summary": {...}} line.
void write_score_report(std::ostream& out, const CorpusScore& score);

}  // namespace leapt
