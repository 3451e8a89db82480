#include "giuga/primality.hpp"

#include <array>
#include <string>

#include "giuga/errors.hpp"

namespace giuga::primality {

namespace {

constexpr std::uint64_t kTableLimit = 1'000'000;

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  for (; e != 0; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
  }
  return r;
}

const PrimeTable& small_table() {
  static const PrimeTable table = primes_up_to(kTableLimit);
  return table;
}

}  // namespace

bool PrimeTable::contains(std::uint64_t n) const {
  if (n > limit_) {
    throw UsageError("PrimeTable::contains: " + std::to_string(n) + " exceeds limit " +
                     std::to_string(limit_));
  }
  return !composite_or_unit_[n];
}

std::vector<std::uint64_t> PrimeTable::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_);
  for (std::uint64_t p = 2; p <= limit_; ++p) {
    if (!composite_or_unit_[p]) out.push_back(p);
  }
  return out;
}

PrimeTable primes_up_to(std::uint64_t limit, std::uint64_t budget) {
  if (limit < 2) throw DomainError("primes_up_to: limit must be >= 2");
  if (limit > budget) {
    throw ResourceError("primes_up_to: limit " + std::to_string(limit) +
                        " exceeds sieve budget " + std::to_string(budget));
  }
  PrimeTable t;
  t.limit_ = limit;
  t.composite_or_unit_.assign(limit + 1, false);
  t.composite_or_unit_[0] = true;
  t.composite_or_unit_[1] = true;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (t.composite_or_unit_[p]) continue;
    for (std::uint64_t q = p * p; q <= limit; q += p) t.composite_or_unit_[q] = true;
  }
  for (std::uint64_t n = 2; n <= limit; ++n) t.count_ += t.composite_or_unit_[n] ? 0 : 1;
  return t;
}

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  // Bases 2..37 are a witness set for all n < 3.3 * 10^24.
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n <= kTableLimit) return small_table().contains(n);
  return miller_rabin(n);
}

bool is_prime(const exact::Nat& n) {
  if (!n.fits_u64()) throw OverflowError("is_prime: argument >= 2^64");
  return is_prime(n.to_u64());
}

}  // namespace giuga::primality
