#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leapt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Paired corpus files disagree in shape (line counts).
class CorpusShapeError : public Error {
 public:
  using Error::Error;
};

// A corpus line is empty or contains an invalid token.
class MalformedSentenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class OovError : public Error {
 public:
  explicit OovError(std::string token)
      : Error("out-of-vocabulary token: " + token), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

// External endpoint failure: timeout, closed stream, or protocol violation.
// raw_response holds the offending line when there was one.
class GatewayError : public Error {
 public:
  explicit GatewayError(const std::string& what, std::string raw_response = {})
      : Error(what), raw_response_(std::move(raw_response)) {}
  const std::string& raw_response() const { return raw_response_; }

 private:
  std::string raw_response_;
};

class PolicyError : public Error {
 public:
  using Error::Error;
};

class MetricInputError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  AlignmentError(const std::string& what, std::vector<std::string> missing)
      : Error(what), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing_sids() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace leapt
