#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "leapt/tokens.h"
#include "leapt/toy_language.h"

namespace leapt {

inline constexpr int kDefaultBeamSize = 10;

struct TranslateRequest {
  TokenSeq src;
  TokenSeq forced_tgt;
  int beam_size = kDefaultBeamSize;

  void validate() const;  // throws ConfigError
};

struct Candidate {
  TokenSeq hypothesis;
  double score = 0.0;

  bool operator==(const Candidate&) const = default;
};

// Ranked beam output. Scores are non-increasing and every hypothesis starts
// with the request's forced target prefix.
struct CandidateSet {
  std::vector<Candidate> candidates;
  int requested_beam = kDefaultBeamSize;

  const TokenSeq& best() const { return candidates.front().hypothesis; }
  bool operator==(const CandidateSet&) const = default;
};

// Throws GatewayError when `set` breaks the CandidateSet invariants for
// `request`.
void validate_candidates(const TranslateRequest& request,
                         const CandidateSet& set);

// True iff `hyp` is a (non-strict) token prefix of at least one candidate.
bool is_prefix_of_candidates(std::span<const Token> hyp,
                             const CandidateSet& candidates);

// Forced-prefix beam decoder. Implementations must be safe to call from
// several threads at once.
class TranslationModel {
 public:
  virtual ~TranslationModel() = default;
  virtual CandidateSet translate(const TranslateRequest& request) = 0;
};

// P(boundary | source prefix) for threshold READ policies.
class BoundaryClassifier {
 public:
  virtual ~BoundaryClassifier() = default;
  virtual double score_boundary(std::span<const Token> src_prefix) = 0;
};

// Validates the request, calls the model and checks the response.
CandidateSet translate(TranslationModel& model, const TranslateRequest& request);

// Built-in deterministic model over a ToyLexicon. Source tokens after a
// "[fw]" marker are look-ahead context and do not change the output.
class ToyModel : public TranslationModel {
 public:
  explicit ToyModel(ToyLexicon lexicon, bool variants = false);

  CandidateSet translate(const TranslateRequest& request) override;
  const ToyLexicon& lexicon() const { return lexicon_; }

 private:
  ToyLexicon lexicon_;
  bool variants_;
};

// Table-driven endpoint for tests and demos. Translations are keyed by the
// exact source sequence; candidates not starting with the forced prefix are
// filtered out. Boundary scores are keyed by source prefix.
//
// Script JSON:
//   {"translations": [{"src": [...], "candidates": [[...], ...],
//                      "scores": [...]}],
//    "boundary_scores": [{"src": [...], "p": 0.4}]}
class ScriptedModel : public TranslationModel, public BoundaryClassifier {
 public:
  ScriptedModel() = default;
  static ScriptedModel from_json(const nlohmann::json& doc);
  static ScriptedModel load(const std::filesystem::path& path);

  void add_translation(const TokenSeq& src, std::vector<TokenSeq> candidates,
                       std::vector<double> scores = {});
  void set_boundary_score(const TokenSeq& src_prefix, double p);

  CandidateSet translate(const TranslateRequest& request) override;
  double score_boundary(std::span<const Token> src_prefix) override;

 private:
  std::map<std::string, std::vector<Candidate>> translations_;
  std::map<std::string, double> boundary_scores_;
};

}  // namespace leapt
