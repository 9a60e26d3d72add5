#include "leapt/toy_language.h"

#include <fstream>
#include <random>

#include "leapt/errors.h"

namespace leapt {

const TokenSeq& ToyLexicon::entry(const Token& token) const {
  auto it = entries.find(token);
  if (it == entries.end()) throw OovError(token);
  return it->second;
}

void ToyLexicon::validate() const {
  if (entries.empty()) throw ConfigError("toy lexicon has no entries");
  for (const auto& [tok, out] : entries) {
    validate_tokens(std::span<const Token>(&tok, 1));
    if (tok == kFutureWordsMarker || tok == kPendingToken) {
      throw ConfigError("toy lexicon uses reserved token " + tok);
    }
    if (out.empty()) throw ConfigError("toy lexicon entry '" + tok + "' is empty");
    validate_tokens(out);
  }
  for (const auto& marker : swap_markers) {
    if (!entries.count(marker)) {
      throw ConfigError("swap marker '" + marker + "' has no lexicon entry");
    }
  }
  for (const auto& [tok, alt] : synonym_slots) {
    if (!entries.count(tok)) {
      throw ConfigError("synonym slot '" + tok + "' has no lexicon entry");
    }
    validate_tokens(std::span<const Token>(&alt, 1));
  }
}

ToyLexicon parse_toy_lexicon(const nlohmann::json& doc) {
  ToyLexicon lex;
  try {
    for (const auto& [tok, out] : doc.at("entries").items()) {
      lex.entries[tok] = out.get<TokenSeq>();
    }
    if (doc.contains("swap_markers")) {
      for (const auto& m : doc["swap_markers"]) lex.swap_markers.insert(m.get<Token>());
    }
    if (doc.contains("synonym_slots")) {
      for (const auto& [tok, alt] : doc["synonym_slots"].items()) {
        lex.synonym_slots[tok] = alt.get<Token>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed toy lexicon: ") + e.what());
  }
  lex.validate();
  return lex;
}

ToyLexicon load_toy_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open toy lexicon " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("toy lexicon " + path.string() + ": " + e.what());
  }
  return parse_toy_lexicon(doc);
}

nlohmann::json toy_lexicon_to_json(const ToyLexicon& lexicon) {
  nlohmann::ordered_json doc;
  doc["entries"] = lexicon.entries;
  doc["swap_markers"] = lexicon.swap_markers;
  doc["synonym_slots"] = lexicon.synonym_slots;
  return doc;
}

ToyTranslation toy_translate_detailed(const ToyLexicon& lexicon,
                                      std::span<const Token> src) {
  ToyTranslation out;
  auto emit = [&](size_t src_index) {
    const auto& entry = lexicon.entry(src[src_index]);
    for (size_t j = 0; j < entry.size(); ++j) {
      out.tokens.push_back(entry[j]);
      out.origin.push_back(src_index);
      out.entry_start.push_back(j == 0);
    }
  };
  size_t i = 0;
  while (i < src.size()) {
    // Fail on OOV before looking at marker status.
    lexicon.entry(src[i]);
    if (lexicon.is_swap_marker(src[i])) {
      if (i + 1 < src.size()) {
        emit(i + 1);
        emit(i);
        i += 2;
      } else {
        out.tokens.emplace_back(kPendingToken);
        out.origin.push_back(i);
        out.entry_start.push_back(false);
        i += 1;
      }
    } else {
      emit(i);
      i += 1;
    }
    out.unit_output_end.push_back(out.tokens.size());
  }
  return out;
}

TokenSeq toy_translate(const ToyLexicon& lexicon, std::span<const Token> src) {
  return toy_translate_detailed(lexicon, src).tokens;
}

ParallelCorpus generate_toy_corpus(const ToyLexicon& lexicon,
                                   size_t n_sentences, size_t max_len,
                                   uint64_t seed) {
  lexicon.validate();
  if (max_len < 1) throw ConfigError("max_len must be at least 1");
  std::vector<Token> all, plain;
  for (const auto& [tok, _] : lexicon.entries) {
    all.push_back(tok);
    if (!lexicon.is_swap_marker(tok)) plain.push_back(tok);
  }
  if (plain.empty()) {
    throw ConfigError("toy lexicon needs at least one non-marker token");
  }
  // mt19937_64 output is fixed by the standard; reduce with modulo rather
  // than a distribution so corpora are identical across standard libraries.
  std::mt19937_64 rng(seed);
  auto pick = [&rng](const std::vector<Token>& from) -> const Token& {
    return from[rng() % from.size()];
  };

  ParallelCorpus corpus;
  corpus.reserve(n_sentences);
  for (size_t s = 0; s < n_sentences; ++s) {
    size_t len = 1 + rng() % max_len;
    TokenSeq src;
    src.reserve(len);
    bool after_marker = false;
    for (size_t i = 0; i < len; ++i) {
      bool last = i + 1 == len;
      const Token& tok = (last || after_marker) ? pick(plain) : pick(all);
      after_marker = lexicon.is_swap_marker(tok);
      src.push_back(tok);
    }
    TokenSeq tgt = toy_translate(lexicon, src);
    corpus.push_back({std::to_string(s), std::move(src), std::move(tgt)});
  }
  return corpus;
}

}  // namespace leapt
