#pragma once

#include <cstddef>
#include <string_view>

namespace ldoskit::fdtd {

/// Row kernels for the field updates. Every field row is contiguous along z;
/// the engine hands each kernel a run of n doubles. A scalar set is always
/// available; a SIMD set is compiled separately and picked at runtime. Both
/// sets must produce bit-identical results (no FMA contraction, same operation
/// order), which the tests check.
struct KernelSet {
  std::string_view name;

  // d[k] = a[k] - b[k]
  void (*diff)(const double* a, const double* b, double* d, std::size_t n);

  // CPML with one coefficient triple for the whole run:
  //   psi = b psi + c d;  d = d * inv_kappa + psi
  void (*cpml_uniform)(double* psi, double* d, double b, double c, double inv_kappa, std::size_t n);

  // CPML with per-element coefficients.
  void (*cpml_graded)(double* psi, double* d, const double* b, const double* c, const double* inv_kappa,
                      std::size_t n);

  // h -= ch (d1 - d2)
  void (*update_h)(double* h, const double* d1, const double* d2, double ch, std::size_t n);

  // e = ca e + cb (d1 - d2)
  void (*update_e)(double* e, const double* d1, const double* d2, double ca, double cb, std::size_t n);

  // Drude edge with polarisation current j:
  //   e' = ca e + cb (d1 - d2) - cj j;  j = alpha j + beta (e' + e)
  void (*update_e_drude)(double* e, double* j, const double* d1, const double* d2, double ca, double cb,
                         double cj, double alpha, double beta, std::size_t n);

  // Fused forms for rows without CPML terms; the differences are taken in
  // place, d1 = a1 - a0 and d2 = b1 - b0, with the same rounding as above.
  void (*update_h_fused)(double* h, const double* a1, const double* a0, const double* b1, const double* b0,
                         double ch, std::size_t n);
  void (*update_e_fused)(double* e, const double* a1, const double* a0, const double* b1, const double* b0,
                         double ca, double cb, std::size_t n);
  void (*update_e_drude_fused)(double* e, double* j, const double* a1, const double* a0, const double* b1,
                               const double* b0, double ca, double cb, double cj, double alpha, double beta,
                               std::size_t n);
};

enum class KernelChoice { automatic, scalar, avx2 };

const KernelSet& scalar_kernels();

/// nullptr when the SIMD set was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2_kernels();

/// automatic picks AVX2 when available. Requesting avx2 on a machine without
/// it throws std::runtime_error.
const KernelSet& select_kernels(KernelChoice choice = KernelChoice::automatic);

KernelChoice parse_kernel_choice(std::string_view s);

}  // namespace ldoskit::fdtd
