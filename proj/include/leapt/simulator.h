#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "leapt/corpus.h"
#include "leapt/gateway.h"
#include "leapt/read_policy.h"

namespace leapt {

enum class EventKind { kRead, kWrite };

struct TraceEvent {
  EventKind kind = EventKind::kRead;
  Token token;
  size_t src_read_count = 0;  // source tokens read once this event happened

  bool operator==(const TraceEvent&) const = default;
};

// READ/WRITE record of one streaming decode. g[i] is the number of source
// tokens read when hypothesis[i] was written.
struct DecodingTrace {
  std::string sid;
  std::vector<TraceEvent> events;
  TokenSeq hypothesis;
  std::vector<size_t> g;
  bool ok = true;         // false when the sentence failed (detail says why)
  bool complete = true;   // false when the final segment produced nothing
  std::string detail;

  size_t source_length() const;
};

// Builds hypothesis and g from an event list, assigning src_read_count.
DecodingTrace make_trace(std::string sid, const std::vector<std::pair<EventKind, Token>>& events);

// Checks the event/hypothesis/g invariants; throws MalformedSentenceError.
void validate_trace(const DecodingTrace& trace);

enum class WriteKind { kPrefixModel, kFullSentenceModel };

struct WritePolicyConfig {
  WriteKind kind = WriteKind::kPrefixModel;
  std::shared_ptr<TranslationModel> model;
  size_t m = 0;  // look-ahead words appended after "[fw]"
  int beam_size = kDefaultBeamSize;

  void validate() const;
};

// Streams `src` through the READ policy. At each segment the model decodes
// the prefix with the committed output forced and the continuation is
// written. With m > 0 up to m further source tokens are read first and
// passed after "[fw]". Wait-k writes one token per step instead of bursts.
DecodingTrace simulate_sentence(const std::string& sid, const TokenSeq& src,
                                const PolicyConfig& read, const WritePolicyConfig& write);

// Table-style rendering: runs of i READs become "WAIT" (i = 1) or "WAIT*i".
std::string render_trace(const DecodingTrace& trace);

struct SimulationReport {
  size_t sentences = 0;
  size_t failed = 0;
  size_t incomplete = 0;
};

struct SimulationResult {
  std::vector<DecodingTrace> traces;
  SimulationReport report;
};

using TraceSink = std::function<void(const DecodingTrace&)>;

// Order-preserving, failure-isolating corpus simulation.
SimulationResult simulate_corpus(const ParallelCorpus& corpus, const PolicyConfig& read,
                                 const WritePolicyConfig& write, size_t workers,
                                 const TraceSink& sink = {});

// {"sid","events":[{"k":"R"|"W","tok"}],"g","hyp"}; failed traces add "error".
std::string trace_to_json_line(const DecodingTrace& trace);
DecodingTrace trace_from_json_line(const std::string& line);
std::vector<DecodingTrace> read_traces(const std::filesystem::path& path);

// {"sid","status","writes","complete","detail"}
std::string trace_record_to_json_line(const DecodingTrace& trace);

}  // namespace leapt
