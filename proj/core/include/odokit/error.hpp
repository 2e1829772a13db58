#pragma once

#include <stdexcept>
#include <string>

namespace odokit {

/// Malformed textual input (literals, cycle notation, JSON partitions).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input that violates a mathematical precondition.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace odokit
