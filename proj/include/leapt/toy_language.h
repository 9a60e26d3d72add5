#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "leapt/corpus.h"
#include "leapt/tokens.h"

namespace leapt {

// Deterministic synthetic language pair. Each source token maps to one or
// more target tokens; a swap marker is translated after the token that
// follows it, which gives the language local reordering.
struct ToyLexicon {
  std::map<Token, TokenSeq> entries;
  std::set<Token> swap_markers;
  // source token -> alternative for the first target token of its entry
  std::map<Token, Token> synonym_slots;

  bool is_swap_marker(const Token& token) const {
    return swap_markers.count(token) > 0;
  }
  const TokenSeq& entry(const Token& token) const;  // throws OovError
  void validate() const;                            // throws ConfigError
};

ToyLexicon parse_toy_lexicon(const nlohmann::json& doc);
ToyLexicon load_toy_lexicon(const std::filesystem::path& path);
nlohmann::json toy_lexicon_to_json(const ToyLexicon& lexicon);

// Toy translation with per-token provenance. Units are the left-to-right
// parse of the source: a plain token, a (marker, partner) pair, or a
// dangling marker at the end of a prefix.
struct ToyTranslation {
  TokenSeq tokens;
  // origin[i]: source index whose entry produced tokens[i]
  std::vector<size_t> origin;
  // true when tokens[i] is the first token of that source token's entry
  std::vector<bool> entry_start;
  // cumulative output length after each unit
  std::vector<size_t> unit_output_end;
};

ToyTranslation toy_translate_detailed(const ToyLexicon& lexicon,
                                      std::span<const Token> src);

TokenSeq toy_translate(const ToyLexicon& lexicon, std::span<const Token> src);

// Random corpus over the lexicon: no source ends on a swap marker and every
// marker is followed by a non-marker. Targets are toy translations.
ParallelCorpus generate_toy_corpus(const ToyLexicon& lexicon,
                                   size_t n_sentences, size_t max_len,
                                   uint64_t seed);

}  // namespace leapt
