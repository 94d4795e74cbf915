#include "ldoskit/fdtd/kernels.hpp"

#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace ldoskit::fdtd {

const KernelSet& scalar_kernels() { return detail::kScalar; }

const KernelSet* avx2_kernels() {
#ifdef LDOSKIT_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &detail::kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& select_kernels(KernelChoice choice) {
  switch (choice) {
    case KernelChoice::scalar:
      return scalar_kernels();
    case KernelChoice::avx2:
      if (const auto* k = avx2_kernels()) return *k;
      throw std::runtime_error("AVX2 kernels requested but not available on this build or CPU");
    case KernelChoice::automatic:
      break;
  }
  if (const auto* k = avx2_kernels()) return *k;
  return scalar_kernels();
}

KernelChoice parse_kernel_choice(std::string_view s) {
  if (s == "auto") return KernelChoice::automatic;
  if (s == "scalar") return KernelChoice::scalar;
  if (s == "avx2") return KernelChoice::avx2;
  throw std::invalid_argument("unknown kernel set '" + std::string(s) + "' (auto|scalar|avx2)");
}

}  // namespace ldoskit::fdtd
