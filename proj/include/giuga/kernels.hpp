#pragma once

// Word-size modular inner loops. Each kernel has a scalar reference
// implementation; vectorized variants are chosen at runtime and must return
// bit-identical results (tests/kernels_test.cpp holds them to that).

#include <cstdint>
#include <string_view>
#include <vector>

namespace giuga::kernels {

// Moduli handled by the word paths: 2 <= m < 2^63.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 63;

struct KernelSet {
  std::string_view name;
  // (lo * (lo+1) * ... * hi) mod m; empty range (lo > hi) gives 1 mod m.
  std::uint64_t (*range_product)(std::uint64_t lo, std::uint64_t hi, std::uint64_t m);
  // (1^e + 2^e + ... + count^e) mod m.
  std::uint64_t (*power_sum)(std::uint64_t exponent, std::uint64_t count, std::uint64_t m);
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m);

const KernelSet& scalar();
// nullptr when the build or the running CPU lacks AVX2.
const KernelSet* avx2();

// Every kernel set usable on this machine, scalar first.
std::vector<const KernelSet*> available();

// Best available set; GIUGA_KERNELS=scalar in the environment forces the
// reference path.
const KernelSet& active();

}  // namespace giuga::kernels
