#pragma once

#include <stdexcept>
#include <string>

namespace idealkit {

/// Malformed user input: DSL syntax, constraint violations, bad files.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A DSL syntax error with the byte offset into the original text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : InputError(message + " (at byte " + std::to_string(offset) + ")"), message_(message), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

/// A precondition of an operation does not hold (e.g. Delta2 on a finite-rank sequence).
class DomainError : public InputError {
 public:
  explicit DomainError(const std::string& what) : InputError(what) {}
};

/// Raised when results that must agree logically disagree. Always a bug.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace idealkit
