#pragma once

#include <stdexcept>
#include <string>

namespace ffdyn {

// Invalid mathematical input: valuation of zero, off-curve point, degenerate map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent data: parse failures, bad fiber matrices, bad JSON.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured cap (iterations, enumeration size, field size) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request is well-formed but outside what the library computes.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ffdyn
