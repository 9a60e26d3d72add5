#include "leapt/gateway.h"

#include <algorithm>
#include <fstream>

#include "leapt/errors.h"

namespace leapt {

void TranslateRequest::validate() const {
  if (beam_size < 1) throw ConfigError("beam_size must be >= 1");
  if (src.empty()) throw ConfigError("translate request with empty source");
}

void validate_candidates(const TranslateRequest& request,
                         const CandidateSet& set) {
  if (set.candidates.empty()) throw GatewayError("empty candidate list");
  if (set.candidates.size() > static_cast<size_t>(request.beam_size)) {
    throw GatewayError("got " + std::to_string(set.candidates.size()) +
                       " candidates for beam " +
                       std::to_string(request.beam_size));
  }
  for (size_t i = 0; i < set.candidates.size(); ++i) {
    const auto& c = set.candidates[i];
    if (i > 0 && c.score > set.candidates[i - 1].score) {
      throw GatewayError("candidate scores are not sorted");
    }
    if (!is_prefix(request.forced_tgt, c.hypothesis)) {
      throw GatewayError("candidate '" + join_tokens(c.hypothesis) +
                         "' does not start with forced prefix '" +
                         join_tokens(request.forced_tgt) + "'");
    }
    try {
      validate_tokens(c.hypothesis);
    } catch (const MalformedSentenceError& e) {
      throw GatewayError(std::string("bad candidate token: ") + e.what());
    }
  }
}

bool is_prefix_of_candidates(std::span<const Token> hyp,
                             const CandidateSet& candidates) {
  return std::any_of(candidates.candidates.begin(), candidates.candidates.end(),
                     [&](const Candidate& c) { return is_prefix(hyp, c.hypothesis); });
}

CandidateSet translate(TranslationModel& model, const TranslateRequest& request) {
  request.validate();
  CandidateSet set = model.translate(request);
  set.requested_beam = request.beam_size;
  validate_candidates(request, set);
  return set;
}

ToyModel::ToyModel(ToyLexicon lexicon, bool variants)
    : lexicon_(std::move(lexicon)), variants_(variants) {
  lexicon_.validate();
}

CandidateSet ToyModel::translate(const TranslateRequest& request) {
  request.validate();
  auto marker = std::find(request.src.begin(), request.src.end(), kFutureWordsMarker);
  std::span<const Token> prefix(request.src.begin(), marker);
  if (marker != request.src.end()) {
    for (auto it = marker + 1; it != request.src.end(); ++it) lexicon_.entry(*it);
  }

  ToyTranslation full = toy_translate_detailed(lexicon_, prefix);
  const TokenSeq& forced = request.forced_tgt;

  // Where the continuation starts in `full`. When the forced prefix is not a
  // prefix of the toy translation, skip the units it covers by length.
  size_t offset = 0;
  if (is_prefix(forced, full.tokens)) {
    offset = forced.size();
  } else {
    for (size_t end : full.unit_output_end) {
      if (end > forced.size()) break;
      offset = end;
    }
  }

  TokenSeq best = forced;
  best.insert(best.end(), full.tokens.begin() + offset, full.tokens.end());
  double best_score = -0.1 * static_cast<double>(full.tokens.size() - offset);

  CandidateSet out;
  out.requested_beam = request.beam_size;
  out.candidates.push_back({best, best_score});

  if (variants_ && request.beam_size >= 2) {
    for (size_t i = offset; i < full.tokens.size(); ++i) {
      if (!full.entry_start[i]) continue;
      auto slot = lexicon_.synonym_slots.find(prefix[full.origin[i]]);
      if (slot == lexicon_.synonym_slots.end() || slot->second == full.tokens[i]) {
        continue;
      }
      TokenSeq alt = best;
      alt[forced.size() + (i - offset)] = slot->second;
      out.candidates.push_back({std::move(alt), best_score - 1.0});
      break;
    }
  }
  return out;
}

ScriptedModel ScriptedModel::from_json(const nlohmann::json& doc) {
  ScriptedModel model;
  try {
    if (doc.contains("translations")) {
      for (const auto& entry : doc["translations"]) {
        std::vector<double> scores;
        if (entry.contains("scores")) scores = entry["scores"].get<std::vector<double>>();
        model.add_translation(entry.at("src").get<TokenSeq>(),
                              entry.at("candidates").get<std::vector<TokenSeq>>(),
                              std::move(scores));
      }
    }
    if (doc.contains("boundary_scores")) {
      for (const auto& entry : doc["boundary_scores"]) {
        model.set_boundary_score(entry.at("src").get<TokenSeq>(),
                                 entry.at("p").get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model script: ") + e.what());
  }
  return model;
}

ScriptedModel ScriptedModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model script " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("model script " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

void ScriptedModel::add_translation(const TokenSeq& src,
                                    std::vector<TokenSeq> candidates,
                                    std::vector<double> scores) {
  if (candidates.empty()) throw ConfigError("scripted translation without candidates");
  if (!scores.empty() && scores.size() != candidates.size()) {
    throw ConfigError("scripted scores/candidates length mismatch");
  }
  auto& slot = translations_[join_tokens(src)];
  slot.clear();
  for (size_t i = 0; i < candidates.size(); ++i) {
    double score = scores.empty() ? -static_cast<double>(i) : scores[i];
    slot.push_back({std::move(candidates[i]), score});
  }
  std::stable_sort(slot.begin(), slot.end(), [](const Candidate& a, const Candidate& b) {
    return a.score > b.score;
  });
}

void ScriptedModel::set_boundary_score(const TokenSeq& src_prefix, double p) {
  if (p < 0.0 || p > 1.0) throw ConfigError("boundary score outside [0,1]");
  boundary_scores_[join_tokens(src_prefix)] = p;
}

CandidateSet ScriptedModel::translate(const TranslateRequest& request) {
  request.validate();
  auto it = translations_.find(join_tokens(request.src));
  if (it == translations_.end()) {
    throw GatewayError("scripted model has no entry for '" +
                       join_tokens(request.src) + "'");
  }
  CandidateSet out;
  out.requested_beam = request.beam_size;
  for (const auto& c : it->second) {
    if (out.candidates.size() == static_cast<size_t>(request.beam_size)) break;
    if (is_prefix(request.forced_tgt, c.hypothesis)) out.candidates.push_back(c);
  }
  if (out.candidates.empty()) {
    throw GatewayError("scripted model has no candidate for '" +
                       join_tokens(request.src) + "' extending '" +
                       join_tokens(request.forced_tgt) + "'");
  }
  return out;
}

double ScriptedModel::score_boundary(std::span<const Token> src_prefix) {
  auto it = boundary_scores_.find(join_tokens(src_prefix));
  if (it == boundary_scores_.end()) {
    throw GatewayError("scripted classifier has no score for '" +
                       join_tokens(src_prefix) + "'");
  }
  return it->second;
}

}  // namespace leapt
