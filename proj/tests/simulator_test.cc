#include <gtest/gtest.h>

#include "leapt/errors.h"
#include "leapt/simulator.h"
#include "test_util.h"

namespace leapt {
namespace {

const ToyLexicon kLex = testing::sample_lexicon();

struct SimSetup {
  std::shared_ptr<ToyModel> model = std::make_shared<ToyModel>(kLex);
  PolicyConfig read;
  WritePolicyConfig write;
  SimSetup() { write.model = model; }
};

std::string events_of(const DecodingTrace& t) {
  std::string out;
  for (const auto& e : t.events) out += e.kind == EventKind::kRead ? 'R' : 'W';
  return out;
}

TEST(WaitKSimulation, OneTokenPerReadThenFlush) {
  SimSetup s;
  s.read.k = 1;
  auto t = simulate_sentence("0", {"a1", "b2", "c3"}, s.read, s.write);
  EXPECT_EQ(events_of(t), "RWRWRW");
  EXPECT_EQ(t.hypothesis, (TokenSeq{"A1", "B2", "C3"}));
  EXPECT_EQ(t.g, (std::vector<size_t>{1, 2, 3}));
  EXPECT_TRUE(t.complete);
  EXPECT_NO_THROW(validate_trace(t));
}

TEST(WaitKSimulation, FertilityCatchesUpAtEnd) {
  SimSetup s;
  s.read.k = 1;
  auto t = simulate_sentence("0", {"d4", "a1"}, s.read, s.write);
  EXPECT_EQ(t.hypothesis, (TokenSeq{"D4", "d4x", "A1"}));
  EXPECT_EQ(t.g, (std::vector<size_t>{1, 2, 2}));
}

TEST(WaitKSimulation, LargeKIsFullSentence) {
  SimSetup s;
  s.read.k = 10;
  TokenSeq src{"a1", "de", "f6", "b2"};
  auto t = simulate_sentence("0", src, s.read, s.write);
  EXPECT_EQ(events_of(t), "RRRRWWWWWW");
  EXPECT_EQ(t.hypothesis, toy_translate(kLex, src));
}

TEST(WaitKSimulation, RejectsFutureWords) {
  SimSetup s;
  s.write.m = 1;
  EXPECT_THROW(simulate_sentence("0", {"a1"}, s.read, s.write), ConfigError);
}

TEST(SegmentSimulation, ScriptedBoundariesWriteBursts) {
  SimSetup s;
  s.read.kind = PolicyKind::kScripted;
  s.read.script = std::make_shared<BoundaryScript>(BoundaryScript{{"0", {1, 3}}});
  auto t = simulate_sentence("0", {"a1", "de", "d4", "b2"}, s.read, s.write);
  EXPECT_EQ(events_of(t), "RWRRWWWRW");
  EXPECT_EQ(t.hypothesis, (TokenSeq{"A1", "D4", "d4x", "OF", "B2"}));
  EXPECT_EQ(t.g, (std::vector<size_t>{1, 3, 3, 3, 4}));
}

TEST(SegmentSimulation, FutureWordsAreReadBeforeWriting) {
  SimSetup s;
  s.read.kind = PolicyKind::kScripted;
  s.read.script = std::make_shared<BoundaryScript>(BoundaryScript{{"0", {1}}});
  s.write.m = 2;
  auto t = simulate_sentence("0", {"a1", "b2", "c3", "e5"}, s.read, s.write);
  // Segment after 1 token, but 2 look-ahead tokens are read first.
  EXPECT_EQ(events_of(t), "RRRWRWWW");
  EXPECT_EQ(t.g, (std::vector<size_t>{3, 4, 4, 4}));
  EXPECT_EQ(t.hypothesis, toy_translate(kLex, TokenSeq{"a1", "b2", "c3", "e5"}));
  EXPECT_EQ(t.source_length(), 4u);
}

TEST(SegmentSimulation, FullSentenceWritePolicyRejectsFutureWords) {
  SimSetup s;
  s.read.kind = PolicyKind::kHeuristic;
  s.write.kind = WriteKind::kFullSentenceModel;
  s.write.m = 1;
  EXPECT_THROW(s.write.validate(), ConfigError);
}

TEST(SegmentSimulation, OutputStopsAtEndOfSequence) {
  ScriptedModel m;
  m.add_translation({"x"}, {{"A", "</s>", "junk"}});
  SimSetup s;
  s.write.model = std::make_shared<ScriptedModel>(m);
  s.read.kind = PolicyKind::kHeuristic;
  auto t = simulate_sentence("0", {"x"}, s.read, s.write);
  EXPECT_EQ(t.hypothesis, TokenSeq{"A"});
}

TEST(SegmentSimulation, EmptyOutputIsIncomplete) {
  ScriptedModel m;
  m.add_translation({"x"}, {{}});
  SimSetup s;
  s.write.model = std::make_shared<ScriptedModel>(m);
  s.read.kind = PolicyKind::kHeuristic;
  auto t = simulate_sentence("0", {"x"}, s.read, s.write);
  EXPECT_TRUE(t.ok);
  EXPECT_FALSE(t.complete);
}

TEST(SimulateCorpus, IsolatesFailuresAndKeepsOrder) {
  SimSetup s;
  s.read.k = 2;
  ParallelCorpus corpus{{"0", {"a1", "b2"}, {}}, {"1", {"zz"}, {}}, {"2", {"c3"}, {}}};
  std::vector<std::string> sids;
  auto r = simulate_corpus(corpus, s.read, s.write, 4,
                           [&](const DecodingTrace& t) { sids.push_back(t.sid); });
  EXPECT_EQ(sids, (std::vector<std::string>{"0", "1", "2"}));
  EXPECT_EQ(r.report.failed, 1u);
  EXPECT_FALSE(r.traces[1].ok);
  EXPECT_NE(r.traces[1].detail.find("zz"), std::string::npos);
  EXPECT_EQ(r.traces[2].hypothesis, TokenSeq{"C3"});
}

TEST(SimulateCorpus, ClassifierOutageIsPerSentence) {
  SimSetup s;
  auto classifier = std::make_shared<ScriptedModel>();
  classifier->set_boundary_score({"a1"}, 0.9);
  s.read.kind = PolicyKind::kThreshold;
  s.read.classifier = classifier;
  ParallelCorpus corpus{{"0", {"a1", "b2"}, {}}, {"1", {"c3", "b2"}, {}}};
  auto r = simulate_corpus(corpus, s.read, s.write, 1);
  EXPECT_TRUE(r.traces[0].ok);
  EXPECT_EQ(events_of(r.traces[0]), "RWRW");
  EXPECT_FALSE(r.traces[1].ok);
}

// Simulating with the boundaries an extraction run found reproduces the
// final extracted target.
TEST(SimulateCorpus, ReplaysExtractionBoundaries) {
  auto corpus = generate_toy_corpus(kLex, 200, 12, 21);
  ToyModel model(kLex);
  ExtractionConfig ecfg;
  ecfg.m = 0;
  ecfg.include_full_pair = true;
  auto extracted = extract_corpus(corpus, model, ecfg, 1);
  auto script = std::make_shared<BoundaryScript>();
  std::map<std::string, TokenSeq> last;
  for (const auto& p : extracted.pairs) {
    (*script)[p.sid].push_back(p.t);
    last[p.sid] = p.tgt_prefix;
  }
  SimSetup s;
  s.read.kind = PolicyKind::kScripted;
  s.read.script = script;
  auto sim = simulate_corpus(corpus, s.read, s.write, 3);
  for (const auto& t : sim.traces) EXPECT_EQ(t.hypothesis, last.at(t.sid)) << t.sid;
}

TEST(Render, CompressesReadRuns) {
  auto t = make_trace("0", {{EventKind::kRead, "a"},
                            {EventKind::kRead, "b"},
                            {EventKind::kWrite, "X"},
                            {EventKind::kRead, "c"},
                            {EventKind::kWrite, "Y"},
                            {EventKind::kWrite, "Z"},
                            {EventKind::kRead, "d"}});
  EXPECT_EQ(render_trace(t), "WAIT*2 X WAIT Y Z WAIT");
  EXPECT_EQ(t.g, (std::vector<size_t>{2, 3, 3}));
  EXPECT_EQ(render_trace(make_trace("e", {})), "");
}

TEST(TraceJson, RoundTripAndTamperDetection) {
  SimSetup s;
  auto t = simulate_sentence("5", {"a1", "de", "d4"}, s.read, s.write);
  std::string line = trace_to_json_line(t);
  auto back = trace_from_json_line(line);
  EXPECT_EQ(back.events.size(), t.events.size());
  EXPECT_EQ(back.hypothesis, t.hypothesis);
  EXPECT_EQ(back.g, t.g);
  EXPECT_EQ(trace_to_json_line(back), line);

  std::string tampered = line;
  tampered.replace(tampered.find("\"g\":[") + 5, 1, "9");
  EXPECT_THROW(trace_from_json_line(tampered), MalformedSentenceError);
  EXPECT_THROW(trace_from_json_line("{\"sid\":\"1\",\"events\":[{\"k\":\"X\",\"tok\":\"a\"}]}"),
               MalformedSentenceError);
}

TEST(TraceJson, FailedTraceKeepsError) {
  DecodingTrace failed;
  failed.sid = "3";
  failed.ok = false;
  failed.complete = false;
  failed.detail = "boom";
  auto back = trace_from_json_line(trace_to_json_line(failed));
  EXPECT_FALSE(back.ok);
  EXPECT_EQ(back.detail, "boom");
  EXPECT_EQ(trace_record_to_json_line(failed),
            R"({"sid":"3","status":"error","writes":0,"complete":false,"detail":"boom"})");
}

}  // namespace
}  // namespace leapt
