#include <gtest/gtest.h>

#include <json.hpp>

#include "cli.h"
#include "test_util.h"

namespace leapt {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    lexicon_ = (testing::data_dir() / "toy_lexicon.json").string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) { return cli::run(args); }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  std::string toy() const { return "toy:" + lexicon_; }

  void make_corpus(size_t n = 40, size_t max_len = 9) {
    ASSERT_EQ(run({"toy-corpus", "--lexicon", lexicon_, "--n", std::to_string(n), "--max-len",
                   std::to_string(max_len), "--seed", "11", "--out", p("c")}),
              0);
  }

  fs::path dir_;
  std::string lexicon_;
};

TEST_F(Cli, ToyCorpusWritesFilesAndManifest) {
  make_corpus(25, 6);
  auto corpus = read_parallel_corpus(p("c.src"), p("c.tgt"));
  EXPECT_EQ(corpus.size(), 25u);
  auto m = json::parse(testing::read_file(p("c.manifest.json")));
  EXPECT_EQ(m["command"], "toy-corpus");
  EXPECT_EQ(m["seed"], 11);
  EXPECT_EQ(m["config"]["max-len"], "6");
  EXPECT_EQ(m["summary"]["sentences"], 25);
  EXPECT_TRUE(m.contains("tool_version"));
  EXPECT_TRUE(m.contains("wall_clock_seconds"));
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}), cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}), cli::kExitUsage);
  EXPECT_EQ(run({"toy-corpus", "--lexicon", lexicon_, "--n", "0", "--out", p("x")}),
            cli::kExitUsage);
  EXPECT_EQ(run({"extract", "--src", "a"}), cli::kExitUsage);
  EXPECT_EQ(run({"simulate", "--src", "a", "--model", toy(), "--read", "sometimes",
                 "--out-traces", p("t")}),
            cli::kExitUsage);
  EXPECT_EQ(run({"toy-corpus", "--lexicon", p("missing.json"), "--n", "3", "--out", p("x")}),
            cli::kExitUsage);
  EXPECT_EQ(run({"--help"}), cli::kExitOk);
}

TEST_F(Cli, MismatchedCorpusExitsTwo) {
  testing::write_file(p("a.src"), "a1\nb2\n");
  testing::write_file(p("a.tgt"), "A1\n");
  EXPECT_EQ(run({"extract", "--src", p("a.src"), "--tgt", p("a.tgt"), "--model", toy(), "--out",
                 p("o.jsonl")}),
            cli::kExitUsage);
}

TEST_F(Cli, DeadEndpointExitsThree) {
  make_corpus(5);
  EXPECT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model",
                 "exec:" + p("no-such-model"), "--timeout-ms", "2000", "--out", p("o.jsonl")}),
            cli::kExitEndpoint);
  EXPECT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model",
                 "tcp:127.0.0.1:1", "--out", p("o.jsonl")}),
            cli::kExitEndpoint);
}

TEST_F(Cli, ExtractOutputsAndSummary) {
  make_corpus();
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--m",
                 "1", "--out", p("pairs.jsonl"), "--export-src", p("j.src"), "--export-tgt",
                 p("j.tgt"), "--dedupe"}),
            0);
  auto pairs = read_prefix_pairs(p("pairs.jsonl"));
  auto m = json::parse(testing::read_file(p("pairs.jsonl.manifest.json")));
  EXPECT_EQ(m["summary"]["pairs"], pairs.size());
  EXPECT_EQ(m["summary"]["processed"], 40);
  EXPECT_EQ(m["summary"]["last_completed_sid"], "39");
  EXPECT_EQ(m["config"]["m"], "1");
  EXPECT_EQ(m["config"]["dedupe"], true);
  auto joint_src = read_token_lines(p("j.src"));
  EXPECT_EQ(joint_src.size(), read_token_lines(p("j.tgt")).size());
  EXPECT_GE(joint_src.size(), pairs.size());
  size_t report_lines = 0;
  std::ifstream report(p("pairs.jsonl.report.jsonl"));
  for (std::string line; std::getline(report, line);) ++report_lines;
  EXPECT_EQ(report_lines, 40u);
}

TEST_F(Cli, ExternalEndpointMatchesInProcess) {
  make_corpus(15);
  std::string exec = "exec:" + std::string(LEAPT_SCRIPTED_MODEL) + " --lexicon " + lexicon_;
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", exec, "--out",
                 p("ext.jsonl"), "--workers", "4"}),
            0);
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--out",
                 p("toy.jsonl")}),
            0);
  EXPECT_EQ(testing::read_file(p("ext.jsonl")), testing::read_file(p("toy.jsonl")));
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
  make_corpus(10);
  testing::write_file(p("run.toml"), "[extract]\nm = 0\nbeam = 3\n");
  ASSERT_EQ(run({"--config", p("run.toml"), "extract", "--src", p("c.src"), "--tgt", p("c.tgt"),
                 "--model", toy(), "--out", p("o.jsonl")}),
            0);
  auto m = json::parse(testing::read_file(p("o.jsonl.manifest.json")));
  EXPECT_EQ(m["config"]["m"], "0");
  EXPECT_EQ(m["config"]["beam"], "3");
  for (const auto& pair : read_prefix_pairs(p("o.jsonl"))) EXPECT_TRUE(pair.fw.empty());
}

TEST_F(Cli, ManifestArgvReproducesOutput) {
  make_corpus();
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--out",
                 p("o.jsonl")}),
            0);
  std::string first = testing::read_file(p("o.jsonl"));
  auto m = json::parse(testing::read_file(p("o.jsonl.manifest.json")));
  fs::remove(p("o.jsonl"));
  ASSERT_EQ(run(m["argv"].get<std::vector<std::string>>()), 0);
  EXPECT_EQ(testing::read_file(p("o.jsonl")), first);
}

TEST_F(Cli, ResumeAfterAppendsRemainingSentences) {
  make_corpus();
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--out",
                 p("full.jsonl")}),
            0);
  // Simulate a run interrupted after sid 17.
  auto keep_through = [](const std::string& text, int last_sid) {
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (std::stoi(json::parse(line)["sid"].get<std::string>()) <= last_sid) out += line + "\n";
    }
    return out;
  };
  testing::write_file(p("part.jsonl"), keep_through(testing::read_file(p("full.jsonl")), 17));
  testing::write_file(p("part.jsonl.report.jsonl"),
                      keep_through(testing::read_file(p("full.jsonl.report.jsonl")), 17));
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--out",
                 p("part.jsonl"), "--resume-after", "17"}),
            0);
  EXPECT_EQ(testing::read_file(p("part.jsonl")), testing::read_file(p("full.jsonl")));
  EXPECT_EQ(testing::read_file(p("part.jsonl.report.jsonl")),
            testing::read_file(p("full.jsonl.report.jsonl")));
  EXPECT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--out",
                 p("x.jsonl"), "--resume-after", "999"}),
            cli::kExitUsage);
}

TEST_F(Cli, ExportSubcommandMatchesInlineExport) {
  make_corpus();
  ASSERT_EQ(run({"extract", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(), "--out",
                 p("o.jsonl"), "--export-src", p("a.src"), "--export-tgt", p("a.tgt")}),
            0);
  ASSERT_EQ(run({"export", "--pairs", p("o.jsonl"), "--src", p("c.src"), "--tgt", p("c.tgt"),
                 "--out-src", p("b.src"), "--out-tgt", p("b.tgt")}),
            0);
  EXPECT_EQ(testing::read_file(p("a.src")), testing::read_file(p("b.src")));
  EXPECT_EQ(testing::read_file(p("a.tgt")), testing::read_file(p("b.tgt")));
}

TEST_F(Cli, SimulateScoreAndSweep) {
  make_corpus(30, 7);
  ASSERT_EQ(run({"simulate", "--src", p("c.src"), "--model", toy(), "--read", "wait_k", "--k",
                 "7", "--out-traces", p("t.jsonl"), "--render", p("t.txt")}),
            0);
  ASSERT_EQ(run({"score", "--traces", p("t.jsonl"), "--ref", p("c.tgt"), "--out-csv",
                 p("s.csv"), "--param-name", "k", "--param-value", "7"}),
            0);
  std::string csv = testing::read_file(p("s.csv"));
  EXPECT_NE(csv.find("k,7.0000,100.0000,"), std::string::npos) << csv;
  auto scores = testing::read_file(p("t.jsonl.scores.jsonl"));
  EXPECT_NE(scores.find("\"summary\""), std::string::npos);

  ASSERT_EQ(run({"sweep", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(),
                 "--values", "7,1,3", "--out-csv", p("sw.csv"), "--traces-dir", p("sw")}),
            0);
  std::string sweep_csv = testing::read_file(p("sw.csv"));
  EXPECT_EQ(sweep_csv.rfind("param_name,param_value,bleu,mean_al,n_sentences\nk,1.0000,", 0), 0u)
      << sweep_csv;
  EXPECT_TRUE(fs::exists(dir_ / "sw" / "k_7.0000.traces.jsonl"));
  EXPECT_EQ(run({"sweep", "--src", p("c.src"), "--tgt", p("c.tgt"), "--model", toy(),
                 "--values", "1.5", "--out-csv", p("bad.csv")}),
            cli::kExitUsage);
}

TEST_F(Cli, ScoreWithMisalignedReferencesExitsTwo) {
  make_corpus(5);
  ASSERT_EQ(run({"simulate", "--src", p("c.src"), "--model", toy(), "--out-traces",
                 p("t.jsonl")}),
            0);
  testing::write_file(p("short.tgt"), "A1\n");
  EXPECT_EQ(run({"score", "--traces", p("t.jsonl"), "--ref", p("short.tgt")}), cli::kExitUsage);
}

TEST_F(Cli, ThresholdPolicyUsesScriptedClassifier) {
  const std::string script = "script:" + (testing::data_dir() / "newton_script.json").string();
  const std::string src = (testing::data_dir() / "newton.src").string();
  ASSERT_EQ(run({"simulate", "--src", src, "--model", script, "--read", "threshold", "--delta",
                 "0.5", "--out-traces", p("t.jsonl"), "--render", p("r.txt")}),
            0);
  EXPECT_EQ(testing::read_file(p("r.txt")),
            "0\tWAIT Newton WAIT*2 discovered WAIT*2 newton's laws of motion\n");
  EXPECT_EQ(run({"simulate", "--src", src, "--model", toy(), "--read", "threshold",
                 "--out-traces", p("t2.jsonl")}),
            cli::kExitUsage);
}

}  // namespace
}  // namespace leapt
