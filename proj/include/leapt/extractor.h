#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "leapt/corpus.h"
#include "leapt/gateway.h"

namespace leapt {

// A source prefix, its optional future-word context and the target prefix
// the model committed to for it.
struct PrefixPair {
  std::string sid;
  size_t t = 0;  // source tokens in the prefix, 1-based boundary
  TokenSeq src_prefix;
  TokenSeq fw;  // future words, without the "[fw]" marker
  TokenSeq tgt_prefix;

  // src_prefix, then "[fw]" and the future words when there are any.
  TokenSeq source_line() const;
  bool operator==(const PrefixPair&) const = default;
};

struct ExtractionConfig {
  int beam_size = kDefaultBeamSize;
  size_t m = 2;  // future words; 0 gives the basic variant
  bool include_full_pair = false;
  size_t max_source_len = 256;

  void validate() const;
};

// Prefix-pair extraction for one sentence. The full-sentence beam is
// computed once; then each source prefix x[0..t) is decoded with the last
// accepted target prefix forced, and its best hypothesis is accepted when it
// is a prefix of any full-sentence candidate. Throws on endpoint failure.
// Boundaries skipped for an empty hypothesis are described in `notes`.
std::vector<PrefixPair> extract_prefix_pairs(const SentencePair& pair,
                                             TranslationModel& model,
                                             const ExtractionConfig& cfg,
                                             std::vector<std::string>* notes = nullptr);

struct SentenceRecord {
  std::string sid;
  bool ok = true;
  size_t pairs = 0;
  std::string detail;
};

struct ExtractionReport {
  std::vector<SentenceRecord> records;
  size_t processed = 0;
  size_t failed = 0;
  size_t skipped = 0;                    // over max_source_len
  std::map<size_t, size_t> histogram;    // pairs per sentence -> sentences
  double mean_pairs = 0.0;               // over sentences that were extracted
  std::string last_completed_sid;
};

struct ExtractionResult {
  std::vector<PrefixPair> pairs;
  ExtractionReport report;
};

// Called in corpus order for each finished sentence.
using ExtractionSink =
    std::function<void(const SentenceRecord&, const std::vector<PrefixPair>&)>;

// Extracts over a corpus on `workers` threads. Output order is corpus order
// regardless of completion order; per-sentence failures are recorded, not
// thrown.
ExtractionResult extract_corpus(const ParallelCorpus& corpus, TranslationModel& model,
                                const ExtractionConfig& cfg, size_t workers,
                                const ExtractionSink& sink = {});

struct ExportReport {
  size_t prefix_lines = 0;
  size_t original_lines = 0;
  size_t duplicates_dropped = 0;
};

// Writes pseudo prefix pairs followed by the original pairs as a parallel
// text corpus.
ExportReport export_joint_corpus(const std::vector<PrefixPair>& pairs,
                                 const ParallelCorpus& originals,
                                 const std::filesystem::path& out_src,
                                 const std::filesystem::path& out_tgt, bool dedupe);

// Line-delimited {"sid","t","src","fw","tgt"} records.
std::string prefix_pair_to_json_line(const PrefixPair& pair);
void write_prefix_pairs(std::ostream& out, const std::vector<PrefixPair>& pairs);
std::vector<PrefixPair> read_prefix_pairs(const std::filesystem::path& path);

// Line-delimited {"sid","status","pairs","detail"} records.
std::string sentence_record_to_json_line(const SentenceRecord& record);

}  // namespace leapt
