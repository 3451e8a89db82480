#pragma once

// Independent reference implementations for tests. These are written
// straight from the definitions with plain mpz arithmetic and share no code
// with the library under test.

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace oracle {

inline mpz_class fact(std::uint64_t m) {
  mpz_class r = 1;
  for (std::uint64_t j = 2; j <= m; ++j) r *= j;
  return r;
}

inline mpz_class ipow(const mpz_class& b, std::uint64_t e) {
  mpz_class r = 1;
  for (std::uint64_t j = 0; j < e; ++j) r *= b;
  return r;
}

inline mpz_class choose(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  return fact(n) / (fact(r) * fact(n - r));
}

inline mpz_class power_sum(std::uint64_t k, std::uint64_t n) {
  mpz_class s = 0;
  for (std::uint64_t j = 1; j < n; ++j) s += ipow(j, k);
  return s;
}

// H_k(n) by dividing factorials.
inline mpz_class H(std::uint64_t k, std::uint64_t n) {
  if (k < 1 || k > n - 1) return 0;
  mpz_class s = 1;
  for (std::uint64_t i = 1; i <= n - 1; ++i) s += fact(n + i - 1 - k) / fact(i) * ipow(i, k);
  return s;
}

inline mpz_class U(std::uint64_t k, std::uint64_t n) {
  if (n < 3 || k < 1 || k > n - 2) return 0;
  mpz_class s = 0;
  for (std::uint64_t i = 1; i <= k + 1; ++i) s += fact(n + i - 2 - k) / fact(i) * ipow(i, k);
  return s;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t mod(const mpz_class& v, std::uint64_t m) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(m));
  if (r < 0) r += static_cast<unsigned long>(m);
  return r.get_ui();
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed'1234'abcdULL);
  return gen;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

}  // namespace oracle
