#pragma once

// Reduced evaluation of the interpolation family. Quotients of factorials are
// always formed as integer range products before reduction; there is no
// modular division anywhere in this module.

#include <compare>
#include <cstdint>
#include <string>

#include "giuga/kernels.hpp"

namespace giuga::mod {

// A value r together with its modulus m, 0 <= r < m, 2 <= m < 2^63.
class Residue {
 public:
  // Reduces value into [0, m).
  Residue(std::uint64_t value, std::uint64_t m);

  std::uint64_t r() const { return r_; }
  std::uint64_t m() const { return m_; }
  bool is_zero() const { return r_ == 0; }

  // Arithmetic requires equal moduli (UsageError otherwise).
  friend Residue operator+(Residue a, Residue b);
  friend Residue operator-(Residue a, Residue b);
  friend Residue operator*(Residue a, Residue b);

  friend bool operator==(const Residue&, const Residue&) = default;

  // "r (mod m)"
  std::string str() const;

 private:
  std::uint64_t r_;
  std::uint64_t m_;
};

// Checks 2 <= m < 2^63.
void require_modulus(std::uint64_t m);

Residue range_product_mod(std::uint64_t lo, std::uint64_t hi, std::uint64_t m,
                          const kernels::KernelSet& k = kernels::active());

// S_k(n) mod n.
Residue power_sum_mod(std::uint64_t k, std::uint64_t n,
                      const kernels::KernelSet& ks = kernels::active());

// S_{n-1}(n) mod n; n >= 2.
Residue giuga_residue(std::uint64_t n, const kernels::KernelSet& ks = kernels::active());

// (1 + (n-1)!) mod n; n >= 2.
Residue wilson_residue(std::uint64_t n, const kernels::KernelSet& ks = kernels::active());

// H_k(n) mod n from the k-term core part; 1 <= k <= n-1.
Residue H_mod(std::uint64_t k, std::uint64_t n, const kernels::KernelSet& ks = kernels::active());

// H_k(n) mod n from all n-1 terms. Validation only: O(n (n-k)).
Residue H_mod_full(std::uint64_t k, std::uint64_t n,
                   const kernels::KernelSet& ks = kernels::active());

// U_k(n) mod n; 1 <= k <= n-2.
Residue U_mod(std::uint64_t k, std::uint64_t n, const kernels::KernelSet& ks = kernels::active());

}  // namespace giuga::mod
