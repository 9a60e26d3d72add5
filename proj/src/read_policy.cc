#include "leapt/read_policy.h"

#include <fstream>

#include <json.hpp>

#include "leapt/errors.h"

namespace leapt {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kWaitK:
      return "wait_k";
    case PolicyKind::kThreshold:
      return "threshold";
    case PolicyKind::kScripted:
      return "scripted";
    case PolicyKind::kHeuristic:
      return "heuristic";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "wait_k") return PolicyKind::kWaitK;
  if (name == "threshold") return PolicyKind::kThreshold;
  if (name == "scripted") return PolicyKind::kScripted;
  if (name == "heuristic") return PolicyKind::kHeuristic;
  throw ConfigError("unknown read policy '" + std::string(name) + "'");
}

std::set<Token> PolicyConfig::default_punctuation() {
  return {",", ";", ":", "\xef\xbc\x8c" /* ， */, "\xe3\x80\x81" /* 、 */,
          "\xef\xbc\x9b" /* ； */, "\xef\xbc\x9a" /* ： */};
}

void PolicyConfig::validate() const {
  switch (kind) {
    case PolicyKind::kWaitK:
      if (k < 1) throw ConfigError("wait_k needs k >= 1");
      break;
    case PolicyKind::kThreshold:
      if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must be in [0,1]");
      if (!classifier) throw ConfigError("threshold policy needs a classifier endpoint");
      break;
    case PolicyKind::kScripted:
      if (!script) throw ConfigError("scripted policy needs a boundary script");
      break;
    case PolicyKind::kHeuristic:
      if (span < 1) throw ConfigError("heuristic span must be >= 1");
      break;
  }
}

BoundaryScript load_boundary_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open boundary script " + path.string());
  BoundaryScript script;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto& slot = script[j.at("sid").get<std::string>()];
      if (j.contains("boundaries")) {
        auto b = j["boundaries"].get<std::vector<size_t>>();
        slot.insert(slot.end(), b.begin(), b.end());
      } else {
        slot.push_back(j.at("t").get<size_t>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return script;
}

ReadPolicy::ReadPolicy(const PolicyConfig& config, std::string sid)
    : config_(config), sid_(std::move(sid)) {
  config_.validate();
  if (config_.kind == PolicyKind::kScripted) {
    auto it = config_.script->find(sid_);
    if (it != config_.script->end()) {
      boundaries_.insert(it->second.begin(), it->second.end());
    }
  }
}

ReadDecision ReadPolicy::decide(std::span<const Token> src_so_far,
                                std::span<const Token> tgt_so_far,
                                bool source_exhausted) {
  const size_t pos = src_so_far.size();
  ReadDecision d;
  if (source_exhausted) {
    d.action = ReadAction::kSegment;
  } else {
    switch (config_.kind) {
      case PolicyKind::kWaitK:
        // One target token is owed per source token beyond the first k.
        if (pos >= config_.k + tgt_so_far.size()) d.action = ReadAction::kSegment;
        break;
      case PolicyKind::kThreshold: {
        double p = 0.0;
        try {
          p = config_.classifier->score_boundary(src_so_far);
        } catch (const std::exception& e) {
          throw PolicyError(std::string("boundary classifier failed: ") + e.what());
        }
        d.score = p;
        if (p >= config_.delta) d.action = ReadAction::kSegment;
        break;
      }
      case PolicyKind::kScripted:
        if (boundaries_.count(pos)) d.action = ReadAction::kSegment;
        break;
      case PolicyKind::kHeuristic:
        if ((pos > 0 && config_.punctuation.count(src_so_far.back())) ||
            pos - last_segment_ >= config_.span) {
          d.action = ReadAction::kSegment;
        }
        break;
    }
  }
  if (d.segment()) last_segment_ = pos;
  return d;
}

}  // namespace leapt
