#pragma once

#include <stdexcept>
#include <string>

namespace limelight {

// Base for every error the toolkit raises on purpose. `stage` names the
// pipeline step that failed ("load", "split", "train", "explain", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

// Bad command line or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Bad input data, or a numeric failure caused by it.
class DataError : public Error {
 public:
  using Error::Error;
};

// The black-box classifier misbehaved: spawn failure, handshake mismatch,
// malformed or non-normalized response, timeout, dead adapter.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace limelight
