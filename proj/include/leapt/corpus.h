#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "leapt/tokens.h"

namespace leapt {

struct SentencePair {
  std::string sid;
  TokenSeq src;
  TokenSeq tgt;

  bool operator==(const SentencePair&) const = default;
};

using ParallelCorpus = std::vector<SentencePair>;

// Reads two line-aligned, whitespace-tokenized files. Sentence ids are the
// zero-based line index. Raw corpora may not contain the "[fw]" marker.
ParallelCorpus read_parallel_corpus(const std::filesystem::path& src_path,
                                    const std::filesystem::path& tgt_path);

void write_parallel_corpus(const ParallelCorpus& corpus,
                           const std::filesystem::path& src_path,
                           const std::filesystem::path& tgt_path);

// One TokenSeq per line; used for reference files.
std::vector<TokenSeq> read_token_lines(const std::filesystem::path& path);

}  // namespace leapt
