#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace telesim {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed trace or config input. Carries a 1-based line number when the
// input came from a line-oriented file (0 means "not line addressable").
struct ParseError : SimError {
  ParseError(std::string msg, std::size_t line_no = 0)
      : SimError(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
  std::size_t line;
};

struct ResubmitLoop : SimError {
  ResubmitLoop() : SimError("second resubmit within one ingress event") {}
};

struct OutOfRange : SimError {
  using SimError::SimError;
};

struct InvalidDpid : SimError {
  InvalidDpid() : SimError("datapath id must be non-zero") {}
};

struct UnknownScenario : SimError {
  explicit UnknownScenario(const std::string& name)
      : SimError("unknown scenario: " + name) {}
};

struct EventOverflow : SimError {
  explicit EventOverflow(std::size_t bound)
      : SimError("pending event queue exceeded bound " + std::to_string(bound)) {}
};

struct Oversize : SimError {
  using SimError::SimError;
};

struct ZeroPayload : SimError {
  ZeroPayload() : SimError("payload size must be positive") {}
};

struct NotReady : SimError {
  using SimError::SimError;
};

struct NoSharedPath : SimError {
  NoSharedPath() : SimError("no installed intent traverses sender and receiver") {}
};

struct OutOfOrder : SimError {
  using SimError::SimError;
};

}  // namespace telesim
