#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leapt {

using Token = std::string;
using TokenSeq = std::vector<Token>;

// Separates a source prefix from its appended future words.
inline constexpr std::string_view kFutureWordsMarker = "[fw]";
// Emitted by the toy model for a swap marker whose partner has not arrived.
inline constexpr std::string_view kPendingToken = "\xe2\x80\xb9pend\xe2\x80\xba";  // ‹pend›
inline constexpr std::string_view kEndOfSequence = "</s>";

TokenSeq split_tokens(std::string_view line);
std::string join_tokens(std::span<const Token> tokens);

// Non-strict: equal sequences count as prefixes of each other.
bool is_prefix(std::span<const Token> prefix, std::span<const Token> seq);

// Throws MalformedSentenceError when a token is empty or holds whitespace.
void validate_tokens(std::span<const Token> tokens);

}  // namespace leapt
