#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "leapt/gateway.h"

namespace leapt {

// Parsed endpoint spec. Accepted syntax:
//   toy:<lexicon.json>[:variants]
//   script:<script.json>       in-process ScriptedModel
//   exec:<command line>
//   tcp:<host>:<port>
struct EndpointSpec {
  enum class Kind { kToy, kScript, kExec, kTcp };

  Kind kind = Kind::kToy;
  std::string path;  // lexicon or script
  bool variants = false;
  std::string command;
  std::string host;
  int port = 0;
  std::chrono::milliseconds timeout{30000};

  std::string to_string() const;
};

EndpointSpec parse_endpoint_spec(std::string_view spec);  // throws ConfigError

// Either member may be null when the backend does not offer it.
struct Endpoint {
  std::shared_ptr<TranslationModel> model;
  std::shared_ptr<BoundaryClassifier> classifier;
};

Endpoint open_endpoint(const EndpointSpec& spec);

}  // namespace leapt
