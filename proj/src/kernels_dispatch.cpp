#include <cstdlib>
#include <string_view>

#include "giuga/kernels.hpp"
#include "kernels_internal.hpp"

namespace giuga::kernels {

const KernelSet* avx2() {
#if defined(GIUGA_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelSet set{"avx2", &detail::range_product_avx2, &detail::power_sum_avx2};
  return supported ? &set : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelSet*> available() {
  std::vector<const KernelSet*> out{&scalar()};
  if (const KernelSet* v = avx2()) out.push_back(v);
  return out;
}

const KernelSet& active() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("GIUGA_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    if (const KernelSet* v = avx2()) return *v;
    return scalar();
  }();
  return chosen;
}

}  // namespace giuga::kernels
