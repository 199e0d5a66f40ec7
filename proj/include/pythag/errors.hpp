#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pythag {

/// Raised when an operation's precondition or a value invariant is violated.
class ContractError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text parsers; carries the byte offset of the failure.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

}  // namespace pythag
