#pragma once

#include <sys/types.h>

#include <atomic>
#include <chrono>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "leapt/gateway.h"
#include "leapt/wire.h"

namespace leapt {

// Client for a model process speaking the line protocol over a pipe pair or
// a TCP stream. Concurrent calls are multiplexed over the one stream and
// matched to responses by correlation id. A non-parseable response line
// kills the process and fails every pending call.
class ExternalEndpoint : public TranslationModel, public BoundaryClassifier {
 public:
  using Duration = std::chrono::milliseconds;

  // Runs `command` through /bin/sh -c with its stdin/stdout connected.
  static std::shared_ptr<ExternalEndpoint> spawn(const std::string& command,
                                                 Duration timeout);
  static std::shared_ptr<ExternalEndpoint> connect(const std::string& host, int port,
                                                   Duration timeout);

  ~ExternalEndpoint() override;
  ExternalEndpoint(const ExternalEndpoint&) = delete;
  ExternalEndpoint& operator=(const ExternalEndpoint&) = delete;

  CandidateSet translate(const TranslateRequest& request) override;
  double score_boundary(std::span<const Token> src_prefix) override;

  bool alive() const;
  pid_t pid() const { return child_; }

 private:
  ExternalEndpoint(int read_fd, int write_fd, pid_t child, bool is_socket,
                   Duration timeout);

  // Sends one request and waits for the matching raw response line.
  std::string call(wire::Json request);
  void reader_loop();
  void fail_all(const std::string& reason, const std::string& raw);

  int read_fd_;
  int write_fd_;
  pid_t child_;
  bool is_socket_;
  Duration timeout_;

  mutable std::mutex mu_;
  std::mutex write_mu_;
  std::map<std::string, std::promise<std::string>> pending_;
  bool dead_ = false;
  std::string dead_reason_;
  std::atomic<uint64_t> next_id_{0};
  std::thread reader_;
};

}  // namespace leapt
