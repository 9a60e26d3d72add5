#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leapt/gateway.h"
#include "leapt/tokens.h"

namespace leapt {

enum class ReadAction { kRead, kSegment };

struct ReadDecision {
  ReadAction action = ReadAction::kRead;
  std::optional<double> score;  // set by scoring policies only

  bool segment() const { return action == ReadAction::kSegment; }
};

enum class PolicyKind { kWaitK, kThreshold, kScripted, kHeuristic };

std::string to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view name);  // throws ConfigError

// sid -> 1-based source positions after which to segment
using BoundaryScript = std::map<std::string, std::vector<size_t>>;

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kWaitK;
  size_t k = 3;                                         // wait_k
  double delta = 0.5;                                   // threshold
  std::shared_ptr<BoundaryClassifier> classifier;       // threshold
  std::shared_ptr<const BoundaryScript> script;         // scripted
  size_t span = 6;                                      // heuristic
  std::set<Token> punctuation = default_punctuation();  // heuristic

  static std::set<Token> default_punctuation();
  void validate() const;  // throws ConfigError
};

// Reads either {"sid","boundaries":[...]} records or prefix-pair records
// (whose "t" values become the sentence's boundaries).
BoundaryScript load_boundary_script(const std::filesystem::path& path);

// Per-stream READ policy state. Not shared between sentences.
class ReadPolicy {
 public:
  ReadPolicy(const PolicyConfig& config, std::string sid);

  // Called once per source position, after that token has been read.
  // tgt_so_far is the committed target. Throws PolicyError when the
  // classifier cannot be reached.
  ReadDecision decide(std::span<const Token> src_so_far,
                      std::span<const Token> tgt_so_far, bool source_exhausted);

  const PolicyConfig& config() const { return config_; }

 private:
  const PolicyConfig& config_;
  std::string sid_;
  std::set<size_t> boundaries_;
  size_t last_segment_ = 0;
};

}  // namespace leapt
