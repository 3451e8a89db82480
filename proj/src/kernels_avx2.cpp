// AVX2 variants of the word kernels. Compiled with -mavx2 and only called
// after a runtime CPU check.
//
// Lanes hold residues in the low 31 bits of each 64-bit slot. The product of
// two residues is formed exactly with _mm256_mul_epu32; the quotient by m is
// estimated in double precision (off by at most one) and corrected with two
// compare-and-adjust steps.

#include <immintrin.h>

#include <array>
#include <bit>

#include "giuga/kernels.hpp"
#include "kernels_internal.hpp"

namespace giuga::kernels::detail {

namespace {

constexpr std::uint64_t kVectorModulusLimit = std::uint64_t{1} << 31;
// Lane steps add at most 8 before a single conditional subtraction.
constexpr std::uint64_t kVectorModulusFloor = 16;
constexpr std::uint64_t kMinVectorLength = 32;

inline __m256d magic52() { return _mm256_set1_pd(4503599627370496.0); }

// Exact for 0 <= x < 2^52.
inline __m256d to_double(__m256i x) {
  const __m256d magic = magic52();
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, _mm256_castpd_si256(magic))), magic);
}

// x integral with 0 <= x < 2^52.
inline __m256i to_u64(__m256d x) {
  const __m256d magic = magic52();
  return _mm256_xor_si256(_mm256_castpd_si256(_mm256_add_pd(x, magic)), _mm256_castpd_si256(magic));
}

struct VecModulus {
  explicit VecModulus(std::uint64_t m)
      : value(_mm256_set1_epi64x(static_cast<long long>(m))),
        value_minus_one(_mm256_set1_epi64x(static_cast<long long>(m - 1))),
        inverse(_mm256_set1_pd(1.0 / static_cast<double>(m))) {}

  __m256i value;
  __m256i value_minus_one;
  __m256d inverse;
};

inline __m256i reduce_once(__m256i x, const VecModulus& mod) {
  const __m256i over = _mm256_cmpgt_epi64(x, mod.value_minus_one);
  return _mm256_sub_epi64(x, _mm256_and_si256(over, mod.value));
}

inline __m256i mul_mod(__m256i a, __m256i b, const VecModulus& mod) {
  const __m256i product = _mm256_mul_epu32(a, b);
  const __m256d estimate =
      _mm256_floor_pd(_mm256_mul_pd(_mm256_mul_pd(to_double(a), to_double(b)), mod.inverse));
  __m256i r = _mm256_sub_epi64(product, _mm256_mul_epu32(to_u64(estimate), mod.value));
  const __m256i negative = _mm256_cmpgt_epi64(_mm256_setzero_si256(), r);
  r = _mm256_add_epi64(r, _mm256_and_si256(negative, mod.value));
  return reduce_once(r, mod);
}

inline std::array<std::uint64_t, 4> lanes(__m256i v) {
  std::array<std::uint64_t, 4> out;
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data()), v);
  return out;
}

inline __m256i consecutive_residues(std::uint64_t first, std::uint64_t m) {
  return _mm256_set_epi64x(static_cast<long long>((first + 3) % m),
                           static_cast<long long>((first + 2) % m),
                           static_cast<long long>((first + 1) % m),
                           static_cast<long long>(first % m));
}

inline bool vector_path(std::uint64_t m, std::uint64_t length) {
  return m < kVectorModulusLimit && m > kVectorModulusFloor && length >= kMinVectorLength;
}

}  // namespace

std::uint64_t range_product_avx2(std::uint64_t lo, std::uint64_t hi, std::uint64_t m) {
  if (lo > hi || !vector_path(m, hi - lo + 1)) return range_product_scalar(lo, hi, m);

  const VecModulus mod(m);
  const __m256i step = _mm256_set1_epi64x(4);
  __m256i values = consecutive_residues(lo, m);
  __m256i acc = _mm256_set1_epi64x(1);

  const std::uint64_t blocks = (hi - lo + 1) / 4;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    acc = mul_mod(acc, values, mod);
    values = reduce_once(_mm256_add_epi64(values, step), mod);
    if ((b & 63) == 63) {
      const __m256i zero = _mm256_cmpeq_epi64(acc, _mm256_setzero_si256());
      if (_mm256_movemask_epi8(zero) != 0) return 0;
    }
  }

  std::uint64_t result = 1;
  for (std::uint64_t lane : lanes(acc)) result = kernels::mul_mod(result, lane, m);
  return kernels::mul_mod(result, range_product_scalar(lo + 4 * blocks, hi, m), m);
}

std::uint64_t power_sum_avx2(std::uint64_t exponent, std::uint64_t count, std::uint64_t m) {
  if (exponent == 0 || !vector_path(m, count)) return power_sum_scalar(exponent, count, m);

  const VecModulus mod(m);
  const __m256i step = _mm256_set1_epi64x(8);
  const int top_bit = 63 - std::countl_zero(exponent);

  // Two independent vectors per iteration hide the multiply latency.
  __m256i base0 = consecutive_residues(1, m);
  __m256i base1 = consecutive_residues(5, m);
  __m256i acc = _mm256_setzero_si256();

  const std::uint64_t blocks = count / 8;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    __m256i r0 = base0;
    __m256i r1 = base1;
    for (int bit = top_bit - 1; bit >= 0; --bit) {
      r0 = mul_mod(r0, r0, mod);
      r1 = mul_mod(r1, r1, mod);
      if ((exponent >> bit) & 1) {
        r0 = mul_mod(r0, base0, mod);
        r1 = mul_mod(r1, base1, mod);
      }
    }
    acc = reduce_once(_mm256_add_epi64(acc, r0), mod);
    acc = reduce_once(_mm256_add_epi64(acc, r1), mod);
    base0 = reduce_once(_mm256_add_epi64(base0, step), mod);
    base1 = reduce_once(_mm256_add_epi64(base1, step), mod);
  }

  std::uint64_t result = 0;
  for (std::uint64_t lane : lanes(acc)) result = (result + lane) % m;
  for (std::uint64_t j = 8 * blocks + 1; j <= count; ++j) {
    result += kernels::pow_mod(j, exponent, m);
    if (result >= m) result -= m;
  }
  return result;
}

}  // namespace giuga::kernels::detail
