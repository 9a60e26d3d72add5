#include "leapt/corpus.h"

#include <fstream>

#include "leapt/errors.h"

namespace leapt {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

TokenSeq parse_sentence(const std::string& line,
                        const std::filesystem::path& path, size_t line_no) {
  TokenSeq tokens = split_tokens(line);
  if (tokens.empty()) {
    throw MalformedSentenceError(path.string() + ":" + std::to_string(line_no) +
                                 ": empty sentence");
  }
  for (const auto& tok : tokens) {
    if (tok == kFutureWordsMarker) {
      throw MalformedSentenceError(path.string() + ":" +
                                   std::to_string(line_no) +
                                   ": reserved token [fw] in raw corpus");
    }
  }
  return tokens;
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<const TokenSeq*>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto* row : rows) out << join_tokens(*row) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

ParallelCorpus read_parallel_corpus(const std::filesystem::path& src_path,
                                    const std::filesystem::path& tgt_path) {
  auto src_lines = read_lines(src_path);
  auto tgt_lines = read_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw CorpusShapeError("line count mismatch: " + src_path.string() +
                           " has " + std::to_string(src_lines.size()) +
                           " lines, " + tgt_path.string() + " has " +
                           std::to_string(tgt_lines.size()));
  }
  ParallelCorpus corpus;
  corpus.reserve(src_lines.size());
  for (size_t i = 0; i < src_lines.size(); ++i) {
    corpus.push_back({std::to_string(i),
                      parse_sentence(src_lines[i], src_path, i + 1),
                      parse_sentence(tgt_lines[i], tgt_path, i + 1)});
  }
  return corpus;
}

void write_parallel_corpus(const ParallelCorpus& corpus,
                           const std::filesystem::path& src_path,
                           const std::filesystem::path& tgt_path) {
  std::vector<const TokenSeq*> src_rows, tgt_rows;
  for (const auto& pair : corpus) {
    src_rows.push_back(&pair.src);
    tgt_rows.push_back(&pair.tgt);
  }
  write_lines(src_path, src_rows);
  write_lines(tgt_path, tgt_rows);
}

std::vector<TokenSeq> read_token_lines(const std::filesystem::path& path) {
  std::vector<TokenSeq> out;
  for (const auto& line : read_lines(path)) out.push_back(split_tokens(line));
  return out;
}

}  // namespace leapt
