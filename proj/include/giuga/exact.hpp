#pragma once

// Arbitrary-precision, definition-literal evaluation of the Wilson/Giuga
// interpolation family. Everything here is the ground-truth oracle for the
// modular paths; nothing in this file reduces modulo anything.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace giuga::exact {

// Signed arbitrary-precision integer.
using Int = mpz_class;

// Nonnegative arbitrary-precision integer.
class Nat {
 public:
  Nat() = default;
  Nat(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  // Throws DomainError for negative values.
  static Nat from_int(Int v);
  static Nat parse(const std::string& decimal);

  const Int& value() const { return value_; }
  std::string str() const { return value_.get_str(); }
  bool is_zero() const { return value_ == 0; }
  bool fits_u64() const;
  std::uint64_t to_u64() const;  // throws OverflowError

  // Remainder modulo a machine word.
  std::uint64_t mod(std::uint64_t m) const;

  // Quotient; throws DomainError unless the remainder is zero.
  Nat exact_div(const Nat& divisor) const;

  Nat& operator+=(const Nat& o) {
    value_ += o.value_;
    return *this;
  }
  Nat& operator*=(const Nat& o) {
    value_ *= o.value_;
    return *this;
  }
  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }

  friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  Int value_{0};
};

Nat factorial(std::uint64_t m);
Nat binomial(std::uint64_t n, std::uint64_t r);

// (n+i-1-k)! / i!, as the product of the integers i+1 .. n+i-1-k.
// Requires 1 <= k <= n-1 and 1 <= i <= n-1.
Nat falling_quotient(std::uint64_t n, std::uint64_t i, std::uint64_t k);

// S_k(n) = sum_{j=1}^{n-1} j^k. Requires n >= 1.
Nat power_sum(std::uint64_t k, std::uint64_t n);

// 1 + (n-1)!, n >= 2.
Nat f_wilson(std::uint64_t n);
// 1 + S_{n-1}(n), n >= 2.
Nat f_giuga(std::uint64_t n);

// H_k(n) = 1 + sum_{i=1}^{n-1} (n+i-1-k)!/i! * i^k for 1 <= k <= n-1, else 0.
// Requires n >= 2.
Nat H(std::uint64_t k, std::uint64_t n);

// Every H_k(n) for one n at once: result[k] == H(k, n) for k in [0, n-1]
// (result[0] == 0). Walks each term down in k instead of rebuilding the
// products, so a full row costs O(n^2) small multiplications.
std::vector<Nat> H_row(std::uint64_t n);

// U_k(n) = sum_{i=1}^{k+1} (n+i-2-k)!/i! * i^k for 1 <= k <= n-2, else 0.
// Requires n >= 2.
Nat U(std::uint64_t k, std::uint64_t n);

// sum_{i=1}^{k} [ (-1)^{i-1} C(k+1,i) i^k + (-1)^k C(k,i) k^i ], k >= 1.
Int V(std::uint64_t k);

// sum_{i=0}^{k} C(k,i) k^i, k >= 1.
Nat binomial_power_sum(std::uint64_t k);

// sum_{i=0}^{k+1} (-1)^i C(k+1,i) i^k, k >= 1.
Int alternating_power_sum(std::uint64_t k);

// Delta^order f(j) given samples f(j), f(j+1), ..., f(j+order).
// Throws UsageError unless samples.size() == order + 1.
Int iterated_forward_difference(std::span<const Int> samples, std::size_t order);

// b^e for a signed base.
Int signed_pow(std::int64_t base, std::uint64_t e);

}  // namespace giuga::exact
