#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "leapt/errors.h"
#include "leapt/metrics.h"
#include "test_util.h"

namespace leapt {
namespace {

// Frozen from tests/oracles/bleu_oracle.py (sacrebleu).
constexpr double kTheCat = 60.653065971263366;
constexpr double kMixed = 59.421707464688346;
constexpr double kMixed2 = 70.80735452207037;
constexpr double kMixed2Bp = 0.9048374180359595;

std::vector<TokenSeq> lines(std::initializer_list<const char*> text) {
  std::vector<TokenSeq> out;
  for (const char* t : text) out.push_back(split_tokens(t));
  return out;
}

TEST(Bleu, IdentityIsExactlyHundred) {
  auto refs = lines({"the cat sat on the mat", "a", "x y", "p q r s t u v w"});
  auto s = corpus_bleu(refs, refs);
  EXPECT_EQ(s.score, 100.0);
  EXPECT_EQ(s.brevity_penalty, 1.0);
}

TEST(Bleu, ShortHypothesisAgainstOracle) {
  auto s = corpus_bleu(lines({"the cat"}), lines({"the cat sat"}));
  EXPECT_NEAR(s.score, kTheCat, 1e-6);
  EXPECT_NEAR(s.score, 100.0 * std::exp(-0.5), 1e-9);
  EXPECT_EQ(s.effective_order, 2u);
  EXPECT_EQ(s.totals, (std::array<size_t, 4>{2, 1, 0, 0}));
}

TEST(Bleu, PooledCountsAgainstOracle) {
  auto s = corpus_bleu(lines({"the cat sat on a mat today", "x y z w"}),
                       lines({"the cat sat on the mat", "x y z w q"}));
  EXPECT_NEAR(s.score, kMixed, 1e-9);
  EXPECT_NEAR(s.precisions[0], 9.0 / 11, 1e-12);
  EXPECT_NEAR(s.precisions[3], 0.4, 1e-12);
  EXPECT_EQ(s.brevity_penalty, 1.0);

  auto s2 = corpus_bleu(lines({"A B C D E F", "B C A D"}), lines({"A B C D E F G", "A B C D"}));
  EXPECT_NEAR(s2.score, kMixed2, 1e-9);
  EXPECT_NEAR(s2.brevity_penalty, kMixed2Bp, 1e-12);
}

TEST(Bleu, ClippingAndCase) {
  // "the the the" vs "the cat": unigram clipped to 1.
  auto s = corpus_bleu(lines({"the the the"}), lines({"the cat"}));
  EXPECT_EQ(s.matches[0], 1u);
  EXPECT_EQ(s.totals[0], 3u);
  auto c = corpus_bleu(lines({"The"}), lines({"the"}));
  EXPECT_EQ(c.matches[0], 0u);
}

TEST(Bleu, EpsilonFloorForZeroMatches) {
  // p1 = 1/3, p2 = 0/2, p3 = 0/1; bp = exp(1 - 4/3).
  auto s = corpus_bleu(lines({"a b c"}), lines({"a x y z"}));
  double expected =
      100.0 * std::exp(1.0 - 4.0 / 3.0) * std::exp((std::log(1.0 / 3) + 2 * std::log(1e-16)) / 3);
  EXPECT_NEAR(s.score, expected, 1e-18);
  BleuOptions o;
  o.epsilon = 0.01;
  double looser =
      100.0 * std::exp(1.0 - 4.0 / 3.0) * std::exp((std::log(1.0 / 3) + 2 * std::log(0.01)) / 3);
  EXPECT_NEAR(corpus_bleu(lines({"a b c"}), lines({"a x y z"}), o).score, looser, 1e-9);
}

TEST(Bleu, EmptyHypothesesScoreZero) {
  std::vector<TokenSeq> hyps{{}, {}};
  auto s = corpus_bleu(hyps, lines({"a b", "c"}));
  EXPECT_EQ(s.score, 0.0);
  EXPECT_TRUE(s.all_empty);
}

TEST(Bleu, LengthMismatchIsError) {
  EXPECT_THROW(corpus_bleu(lines({"a"}), lines({"a", "b"})), MetricInputError);
}

TEST(Bleu, TokenizeSplitsPunctuation) {
  EXPECT_EQ(split_punctuation(TokenSeq{"said,", "he.", "x"}),
            (TokenSeq{"said", ",", "he", ".", "x"}));
  BleuOptions o;
  o.tokenize = true;
  EXPECT_EQ(corpus_bleu(lines({"said, he"}), lines({"said , he"}), o).score, 100.0);
}

// Property: scores stay in [0, 100], identity is 100 and a corrupted copy
// never beats the original.
TEST(Bleu, PropertyRangeAndIdentity) {
  std::mt19937_64 rng(5);
  const TokenSeq vocab{"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenSeq> refs, hyps;
    for (int s = 0; s < 5; ++s) {
      TokenSeq ref;
      for (size_t i = 0; i < 1 + rng() % 9; ++i) ref.push_back(vocab[rng() % vocab.size()]);
      TokenSeq hyp = ref;
      if (rng() % 2) hyp[rng() % hyp.size()] = "zz";
      refs.push_back(ref);
      hyps.push_back(hyp);
    }
    auto s = corpus_bleu(hyps, refs);
    EXPECT_GE(s.score, 0.0);
    EXPECT_LE(s.score, 100.0);
    EXPECT_EQ(corpus_bleu(refs, refs).score, 100.0);
  }
}

TEST(AverageLagging, WaitKClosedForm) {
  for (size_t n = 1; n <= 20; ++n) {
    for (size_t k = 1; k <= n; ++k) {
      std::vector<size_t> g;
      for (size_t t = 1; t <= n; ++t) g.push_back(std::min(k + t - 1, n));
      EXPECT_NEAR(average_lagging(g, n, n).al, static_cast<double>(k), 1e-9)
          << "k=" << k << " n=" << n;
    }
  }
}

TEST(AverageLagging, HandWorkedExamples) {
  std::vector<size_t> g{2, 3, 3};
  auto s = average_lagging(g, 3, 3);
  EXPECT_EQ(s.tau, 2u);
  EXPECT_DOUBLE_EQ(s.al, 2.0);
  // Longer hypothesis: r = 2, tau = 3, (1 + 0.5 + 1) / 3.
  std::vector<size_t> g2{1, 1, 2, 2};
  auto s2 = average_lagging(g2, 2, 4);
  EXPECT_EQ(s2.tau, 3u);
  EXPECT_DOUBLE_EQ(s2.r, 2.0);
  EXPECT_NEAR(s2.al, 2.5 / 3.0, 1e-12);
  // Full-sentence decoding lags by the whole source.
  std::vector<size_t> g3{4, 4};
  EXPECT_DOUBLE_EQ(average_lagging(g3, 4, 2).al, 4.0);
}

TEST(AverageLagging, RejectsBadInput) {
  std::vector<size_t> ok{1, 2};
  EXPECT_THROW(average_lagging(ok, 0, 2), MetricInputError);
  EXPECT_THROW(average_lagging({}, 2, 0), MetricInputError);
  EXPECT_THROW(average_lagging(ok, 2, 3), MetricInputError);
  std::vector<size_t> dec{2, 1};
  EXPECT_THROW(average_lagging(dec, 2, 2), MetricInputError);
  std::vector<size_t> over{1, 3};
  EXPECT_THROW(average_lagging(over, 2, 2), MetricInputError);
}

DecodingTrace trace_for(const std::string& sid, const TokenSeq& src, const TokenSeq& hyp,
                        const std::vector<size_t>& g) {
  std::vector<std::pair<EventKind, Token>> ev;
  size_t read = 0;
  for (size_t i = 0; i < hyp.size(); ++i) {
    while (read < g[i]) ev.emplace_back(EventKind::kRead, src[read++]);
    ev.emplace_back(EventKind::kWrite, hyp[i]);
  }
  while (read < src.size()) ev.emplace_back(EventKind::kRead, src[read++]);
  return make_trace(sid, ev);
}

TEST(ScoreTraces, CombinesBleuAndLatency) {
  std::vector<DecodingTrace> traces{trace_for("0", {"a", "b", "c"}, {"A", "B", "C"}, {2, 3, 3}),
                                    trace_for("1", {"x", "y"}, {"X", "Y"}, {2, 2})};
  std::map<std::string, TokenSeq> refs{{"0", {"A", "B", "C"}}, {"1", {"X", "Y"}}};
  auto s = score_traces(traces, refs);
  EXPECT_EQ(s.bleu.score, 100.0);
  EXPECT_DOUBLE_EQ(s.mean_al, (2.0 + 2.0) / 2);
  EXPECT_EQ(s.n_sentences, 2u);

  std::ostringstream report;
  write_score_report(report, s);
  EXPECT_NE(report.str().find("\"al_units\":\"tokens\""), std::string::npos);
}

TEST(ScoreTraces, EmptyHypothesisHasNoLatency) {
  std::vector<DecodingTrace> traces{trace_for("0", {"a"}, {"A"}, {1}),
                                    trace_for("1", {"b"}, {}, {})};
  auto s = score_traces(traces, {{"0", {"A"}}, {"1", {"B"}}});
  EXPECT_EQ(s.without_latency, 1u);
  EXPECT_DOUBLE_EQ(s.mean_al, 1.0);
}

TEST(ScoreTraces, MisalignedSidsAreListed) {
  std::vector<DecodingTrace> traces{trace_for("0", {"a"}, {"A"}, {1}),
                                    trace_for("9", {"a"}, {"A"}, {1})};
  try {
    score_traces(traces, {{"0", {"A"}}, {"4", {"B"}}});
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.missing_sids(), (std::vector<std::string>{"9", "4"}));
  }
}

TEST(Sweep, SortedPointsAndCsv) {
  std::map<std::string, TokenSeq> refs{{"0", {"A", "B"}}};
  std::vector<SweepRun> runs{{5.0, {trace_for("0", {"a", "b"}, {"A", "B"}, {2, 2})}},
                             {1.0, {trace_for("0", {"a", "b"}, {"A", "C"}, {1, 2})}}};
  auto points = sweep("k", runs, refs);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].param_value, 1.0);
  std::ostringstream csv;
  write_sweep_csv(csv, points);
  EXPECT_EQ(csv.str(),
            "param_name,param_value,bleu,mean_al,n_sentences\n"
            "k,1.0000,0.0000,1.0000,1\n"
            "k,5.0000,100.0000,2.0000,1\n");
}

}  // namespace
}  // namespace leapt
