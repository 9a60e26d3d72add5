#include "leapt/wire.h"

#include "leapt/errors.h"

namespace leapt::wire {

Json encode_translate_request(const std::string& id, const TranslateRequest& request) {
  Json j;
  j["id"] = id;
  j["op"] = "translate";
  j["src"] = request.src;
  j["forced_tgt"] = request.forced_tgt;
  j["beam"] = request.beam_size;
  return j;
}

Json encode_score_request(const std::string& id, std::span<const Token> src) {
  Json j;
  j["id"] = id;
  j["op"] = "score_boundary";
  j["src"] = TokenSeq(src.begin(), src.end());
  return j;
}

CandidateSet decode_translate_response(const Json& msg, const std::string& raw,
                                       int requested_beam) {
  if (msg.contains("error")) {
    throw GatewayError("endpoint error: " + msg["error"].dump(), raw);
  }
  CandidateSet out;
  out.requested_beam = requested_beam;
  try {
    auto hyps = msg.at("candidates").get<std::vector<TokenSeq>>();
    auto scores = msg.at("scores").get<std::vector<double>>();
    if (hyps.size() != scores.size()) {
      throw GatewayError("candidates/scores length mismatch", raw);
    }
    for (size_t i = 0; i < hyps.size(); ++i) {
      out.candidates.push_back({std::move(hyps[i]), scores[i]});
    }
  } catch (const Json::exception& e) {
    throw GatewayError(std::string("malformed translate response: ") + e.what(), raw);
  }
  if (out.candidates.empty()) throw GatewayError("response with zero candidates", raw);
  return out;
}

double decode_score_response(const Json& msg, const std::string& raw) {
  if (msg.contains("error")) {
    throw GatewayError("endpoint error: " + msg["error"].dump(), raw);
  }
  double p = 0.0;
  try {
    p = msg.at("p").get<double>();
  } catch (const Json::exception& e) {
    throw GatewayError(std::string("malformed score response: ") + e.what(), raw);
  }
  if (!(p >= 0.0 && p <= 1.0)) throw GatewayError("boundary score outside [0,1]", raw);
  return p;
}

std::string handle_request_line(std::string_view line, TranslationModel* model,
                                BoundaryClassifier* classifier) {
  Json reply;
  Json req;
  try {
    req = Json::parse(line);
  } catch (const Json::exception&) {
    reply["id"] = "?";
    reply["error"] = "unparseable request";
    return reply.dump();
  }
  reply["id"] = req.contains("id") && req["id"].is_string() ? req["id"] : Json("?");
  try {
    std::string op = req.at("op").get<std::string>();
    if (op == "translate") {
      if (!model) throw Error("no translation model configured");
      TranslateRequest request{req.at("src").get<TokenSeq>(),
                               req.value("forced_tgt", TokenSeq{}),
                               req.value("beam", kDefaultBeamSize)};
      CandidateSet set = translate(*model, request);
      Json hyps = Json::array(), scores = Json::array();
      for (const auto& c : set.candidates) {
        hyps.push_back(c.hypothesis);
        scores.push_back(c.score);
      }
      reply["candidates"] = std::move(hyps);
      reply["scores"] = std::move(scores);
    } else if (op == "score_boundary") {
      if (!classifier) throw Error("no boundary classifier configured");
      reply["p"] = classifier->score_boundary(req.at("src").get<TokenSeq>());
    } else {
      throw Error("unknown op '" + op + "'");
    }
  } catch (const Json::exception& e) {
    reply["error"] = std::string("bad request: ") + e.what();
  } catch (const std::exception& e) {
    reply["error"] = e.what();
  }
  return reply.dump();
}

}  // namespace leapt::wire
