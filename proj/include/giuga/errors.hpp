#pragma once

#include <stdexcept>
#include <string>

namespace giuga {

// Argument outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed call or configuration (wrong sample count, bad flags, n_lo > n_hi).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Estimated work or memory exceeds the configured ceiling.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class UnknownClaimError : public std::invalid_argument {
 public:
  explicit UnknownClaimError(const std::string& id)
      : std::invalid_argument("unknown claim id: " + id) {}
};

}  // namespace giuga
