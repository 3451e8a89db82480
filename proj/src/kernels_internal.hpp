#pragma once

#include <cstdint>

namespace giuga::kernels::detail {

std::uint64_t range_product_scalar(std::uint64_t lo, std::uint64_t hi, std::uint64_t m);
std::uint64_t power_sum_scalar(std::uint64_t exponent, std::uint64_t count, std::uint64_t m);

std::uint64_t range_product_avx2(std::uint64_t lo, std::uint64_t hi, std::uint64_t m);
std::uint64_t power_sum_avx2(std::uint64_t exponent, std::uint64_t count, std::uint64_t m);

}  // namespace giuga::kernels::detail
