#pragma once

#include "ldoskit/fdtd/kernels.hpp"

namespace ldoskit::fdtd::detail {

extern const KernelSet kScalar;
#ifdef LDOSKIT_HAVE_AVX2
extern const KernelSet kAvx2;
#endif

}  // namespace ldoskit::fdtd::detail
