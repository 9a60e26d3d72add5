#include "leapt/endpoint.h"

#include <charconv>

#include "leapt/errors.h"
#include "leapt/external_endpoint.h"

namespace leapt {

std::string EndpointSpec::to_string() const {
  switch (kind) {
    case Kind::kToy:
      return "toy:" + path + (variants ? ":variants" : "");
    case Kind::kScript:
      return "script:" + path;
    case Kind::kExec:
      return "exec:" + command;
    case Kind::kTcp:
      return "tcp:" + host + ":" + std::to_string(port);
  }
  return {};
}

EndpointSpec parse_endpoint_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("endpoint spec '" + std::string(spec) +
                      "' must look like toy:|script:|exec:|tcp:");
  }
  std::string_view scheme = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  if (rest.empty()) throw ConfigError("endpoint spec '" + std::string(spec) + "' is empty");

  EndpointSpec out;
  if (scheme == "toy") {
    out.kind = EndpointSpec::Kind::kToy;
    constexpr std::string_view kVariants = ":variants";
    if (rest.size() > kVariants.size() && rest.ends_with(kVariants)) {
      out.variants = true;
      rest.remove_suffix(kVariants.size());
    }
    out.path = rest;
  } else if (scheme == "script") {
    out.kind = EndpointSpec::Kind::kScript;
    out.path = rest;
  } else if (scheme == "exec") {
    out.kind = EndpointSpec::Kind::kExec;
    out.command = rest;
  } else if (scheme == "tcp") {
    out.kind = EndpointSpec::Kind::kTcp;
    auto last = rest.rfind(':');
    if (last == std::string_view::npos || last == 0) {
      throw ConfigError("tcp endpoint needs host:port, got '" + std::string(rest) + "'");
    }
    out.host = rest.substr(0, last);
    std::string_view port = rest.substr(last + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
    if (ec != std::errc() || ptr != port.data() + port.size() || out.port <= 0 ||
        out.port > 65535) {
      throw ConfigError("bad tcp port '" + std::string(port) + "'");
    }
  } else {
    throw ConfigError("unknown endpoint scheme '" + std::string(scheme) + "'");
  }
  return out;
}

Endpoint open_endpoint(const EndpointSpec& spec) {
  switch (spec.kind) {
    case EndpointSpec::Kind::kToy:
      return {std::make_shared<ToyModel>(load_toy_lexicon(spec.path), spec.variants),
              nullptr};
    case EndpointSpec::Kind::kScript: {
      auto model = std::make_shared<ScriptedModel>(ScriptedModel::load(spec.path));
      return {model, model};
    }
    case EndpointSpec::Kind::kExec: {
      auto ext = ExternalEndpoint::spawn(spec.command, spec.timeout);
      return {ext, ext};
    }
    case EndpointSpec::Kind::kTcp: {
      auto ext = ExternalEndpoint::connect(spec.host, spec.port, spec.timeout);
      return {ext, ext};
    }
  }
  throw ConfigError("unhandled endpoint kind");
}

}  // namespace leapt
