#include "leapt/tokens.h"

#include <algorithm>
#include <cctype>

#include "leapt/errors.h"

namespace leapt {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

TokenSeq split_tokens(std::string_view line) {
  TokenSeq tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string join_tokens(std::span<const Token> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

bool is_prefix(std::span<const Token> prefix, std::span<const Token> seq) {
  if (prefix.size() > seq.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), seq.begin());
}

void validate_tokens(std::span<const Token> tokens) {
  for (const auto& tok : tokens) {
    if (tok.empty()) throw MalformedSentenceError("empty token");
    if (std::any_of(tok.begin(), tok.end(), is_space)) {
      throw MalformedSentenceError("token contains whitespace: '" + tok + "'");
    }
  }
}

}  // namespace leapt
