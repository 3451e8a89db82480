#pragma once

// Ground-truth primality. Deliberately shares no code with the congruence
// paths in exact/mod (its own mulmod, its own powmod).

#include <cstdint>
#include <vector>

#include "giuga/exact.hpp"

namespace giuga::primality {

// Default cap on sieve size (entries); primes_up_to throws ResourceError above it.
inline constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t{1} << 32;

class PrimeTable {
 public:
  std::uint64_t limit() const { return limit_; }
  // n <= limit required.
  bool contains(std::uint64_t n) const;
  std::uint64_t count() const { return count_; }
  std::vector<std::uint64_t> primes() const;

 private:
  friend PrimeTable primes_up_to(std::uint64_t, std::uint64_t);
  std::uint64_t limit_ = 0;
  std::uint64_t count_ = 0;
  std::vector<bool> composite_or_unit_;
};

// Sieve of Eratosthenes over [0, limit]; limit >= 2.
PrimeTable primes_up_to(std::uint64_t limit, std::uint64_t budget = kDefaultSieveBudget);

// Deterministic for every 64-bit n: table lookup up to 10^6, strong
// pseudoprime test to the first twelve prime bases above that.
bool is_prime(std::uint64_t n);
// Throws OverflowError for n >= 2^64.
bool is_prime(const exact::Nat& n);

// Strong-pseudoprime test only (no table), exposed for cross-checking.
bool miller_rabin(std::uint64_t n);

}  // namespace giuga::primality
