#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "leapt/gateway.h"

// Line-delimited JSON protocol spoken with external model processes.
//
//   request:  {"id", "op": "translate", "src", "forced_tgt", "beam"}
//             {"id", "op": "score_boundary", "src"}
//   response: {"id", "candidates": [[tokens]...], "scores": [...]}
//             {"id", "p": float}
//   error:    {"id", "error": string}
namespace leapt::wire {

using Json = nlohmann::ordered_json;

Json encode_translate_request(const std::string& id, const TranslateRequest& request);
Json encode_score_request(const std::string& id, std::span<const Token> src);

// Client-side decoding. Throws GatewayError carrying `raw` on error
// responses or malformed payloads.
CandidateSet decode_translate_response(const Json& msg, const std::string& raw,
                                       int requested_beam);
double decode_score_response(const Json& msg, const std::string& raw);

// Server side: answers one request line with one response line (no
// trailing newline). Either backend may be null.
std::string handle_request_line(std::string_view line, TranslationModel* model,
                                BoundaryClassifier* classifier);

}  // namespace leapt::wire
