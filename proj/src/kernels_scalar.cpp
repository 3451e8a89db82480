#include "giuga/kernels.hpp"

#include "kernels_internal.hpp"

namespace giuga::kernels {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= (std::uint64_t{1} << 32)) return (a % m) * (b % m) % m;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

namespace detail {

std::uint64_t range_product_scalar(std::uint64_t lo, std::uint64_t hi, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  for (std::uint64_t j = lo; j <= hi && acc != 0; ++j) acc = mul_mod(acc, j % m, m);
  return acc;
}

std::uint64_t power_sum_scalar(std::uint64_t exponent, std::uint64_t count, std::uint64_t m) {
  std::uint64_t acc = 0;
  for (std::uint64_t j = 1; j <= count; ++j) {
    acc += pow_mod(j, exponent, m);
    if (acc >= m) acc -= m;
  }
  return acc;
}

}  // namespace detail

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &detail::range_product_scalar, &detail::power_sum_scalar};
  return set;
}

}  // namespace giuga::kernels
