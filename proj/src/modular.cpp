#include "giuga/modular.hpp"

#include "giuga/errors.hpp"

namespace giuga::mod {

namespace {

std::string pair_text(std::uint64_t k, std::uint64_t n) {
  return "(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")";
}

void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.m() != b.m()) {
    throw UsageError("Residue arithmetic across moduli " + std::to_string(a.m()) + " and " +
                     std::to_string(b.m()));
  }
}

// 1 + sum_{i=1}^{last} (n+i-1-k)!/i! * i^k  (mod n)
Residue h_partial(std::uint64_t k, std::uint64_t n, std::uint64_t last,
                  const kernels::KernelSet& ks) {
  std::uint64_t acc = 1 % n;
  for (std::uint64_t i = 1; i <= last; ++i) {
    const std::uint64_t quotient = ks.range_product(i + 1, n + i - 1 - k, n);
    if (quotient == 0) continue;
    acc = (acc + kernels::mul_mod(quotient, kernels::pow_mod(i, k, n), n)) % n;
  }
  return Residue(acc, n);
}

}  // namespace

void require_modulus(std::uint64_t m) {
  if (m < 2 || m >= kernels::kMaxModulus) {
    throw DomainError("modulus must satisfy 2 <= m < 2^63, got " + std::to_string(m));
  }
}

Residue::Residue(std::uint64_t value, std::uint64_t m) : r_(0), m_(m) {
  require_modulus(m);
  r_ = value % m;
}

Residue operator+(Residue a, Residue b) {
  require_same_modulus(a, b);
  const std::uint64_t s = a.r_ + b.r_;  // both < 2^63
  return Residue(s >= a.m_ ? s - a.m_ : s, a.m_);
}

Residue operator-(Residue a, Residue b) {
  require_same_modulus(a, b);
  return Residue(a.r_ >= b.r_ ? a.r_ - b.r_ : a.r_ + (a.m_ - b.r_), a.m_);
}

Residue operator*(Residue a, Residue b) {
  require_same_modulus(a, b);
  return Residue(kernels::mul_mod(a.r_, b.r_, a.m_), a.m_);
}

std::string Residue::str() const { return std::to_string(r_) + " (mod " + std::to_string(m_) + ")"; }

Residue range_product_mod(std::uint64_t lo, std::uint64_t hi, std::uint64_t m,
                          const kernels::KernelSet& ks) {
  require_modulus(m);
  if (hi != UINT64_MAX && lo > hi + 1) {
    throw DomainError("range_product_mod: need lo <= hi + 1");
  }
  return Residue(ks.range_product(lo, hi, m), m);
}

Residue power_sum_mod(std::uint64_t k, std::uint64_t n, const kernels::KernelSet& ks) {
  require_modulus(n);
  return Residue(ks.power_sum(k, n - 1, n), n);
}

Residue giuga_residue(std::uint64_t n, const kernels::KernelSet& ks) {
  return power_sum_mod(n - 1, n, ks);
}

Residue wilson_residue(std::uint64_t n, const kernels::KernelSet& ks) {
  require_modulus(n);
  return Residue(1, n) + Residue(ks.range_product(1, n - 1, n), n);
}

Residue H_mod(std::uint64_t k, std::uint64_t n, const kernels::KernelSet& ks) {
  require_modulus(n);
  if (k < 1 || k > n - 1) throw DomainError("H_mod: need 1 <= k <= n-1 " + pair_text(k, n));
  return h_partial(k, n, k, ks);
}

Residue H_mod_full(std::uint64_t k, std::uint64_t n, const kernels::KernelSet& ks) {
  require_modulus(n);
  if (k < 1 || k > n - 1) throw DomainError("H_mod_full: need 1 <= k <= n-1 " + pair_text(k, n));
  return h_partial(k, n, n - 1, ks);
}

Residue U_mod(std::uint64_t k, std::uint64_t n, const kernels::KernelSet& ks) {
  require_modulus(n);
  if (n < 3 || k < 1 || k > n - 2) throw DomainError("U_mod: need 1 <= k <= n-2 " + pair_text(k, n));
  std::uint64_t acc = 0;
  for (std::uint64_t i = 1; i <= k + 1; ++i) {
    const std::uint64_t quotient = ks.range_product(i + 1, n + i - 2 - k, n);
    if (quotient == 0) continue;
    acc = (acc + kernels::mul_mod(quotient, kernels::pow_mod(i, k, n), n)) % n;
  }
  return Residue(acc, n);
}

}  // namespace giuga::mod
