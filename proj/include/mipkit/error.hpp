#pragma once

#include <stdexcept>
#include <string>

namespace mipkit {

// Caller broke an API contract (mismatched parents, bad arguments).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis required by an operation does not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input presentation or witness text could not be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Overlap check failed while building a presentation.
class InconsistentPresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Computation would exceed a configured size bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Result contradicts a proven structural fact; indicates a bug or bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mipkit
