#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdual {

/// An operation was called outside its domain (shape mismatch, wrong mode, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed group, element or matrix literal.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace kdual
