// Built with -mavx2 only; the dispatcher checks the CPU before use.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace ldoskit::fdtd::detail {

namespace {

constexpr std::size_t W = 4;

void diff(const double* a, const double* b, double* d, std::size_t n) {
  std::size_t k = 0;
  for (; k + W <= n; k += W) _mm256_storeu_pd(d + k, _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  for (; k < n; ++k) d[k] = a[k] - b[k];
}

void cpml_uniform(double* psi, double* d, double b, double c, double inv_kappa, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b), vc = _mm256_set1_pd(c), vk = _mm256_set1_pd(inv_kappa);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    const __m256d dk = _mm256_loadu_pd(d + k);
    const __m256d p = _mm256_add_pd(_mm256_mul_pd(vb, _mm256_loadu_pd(psi + k)), _mm256_mul_pd(vc, dk));
    _mm256_storeu_pd(psi + k, p);
    _mm256_storeu_pd(d + k, _mm256_add_pd(_mm256_mul_pd(dk, vk), p));
  }
  for (; k < n; ++k) {
    psi[k] = b * psi[k] + c * d[k];
    d[k] = d[k] * inv_kappa + psi[k];
  }
}

void cpml_graded(double* psi, double* d, const double* b, const double* c, const double* inv_kappa,
                 std::size_t n) {
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    const __m256d dk = _mm256_loadu_pd(d + k);
    const __m256d p = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(b + k), _mm256_loadu_pd(psi + k)),
                                    _mm256_mul_pd(_mm256_loadu_pd(c + k), dk));
    _mm256_storeu_pd(psi + k, p);
    _mm256_storeu_pd(d + k, _mm256_add_pd(_mm256_mul_pd(dk, _mm256_loadu_pd(inv_kappa + k)), p));
  }
  for (; k < n; ++k) {
    psi[k] = b[k] * psi[k] + c[k] * d[k];
    d[k] = d[k] * inv_kappa[k] + psi[k];
  }
}

void update_h(double* h, const double* d1, const double* d2, double ch, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(ch);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    const __m256d c = _mm256_sub_pd(_mm256_loadu_pd(d1 + k), _mm256_loadu_pd(d2 + k));
    _mm256_storeu_pd(h + k, _mm256_sub_pd(_mm256_loadu_pd(h + k), _mm256_mul_pd(vc, c)));
  }
  for (; k < n; ++k) h[k] = h[k] - ch * (d1[k] - d2[k]);
}

void update_e(double* e, const double* d1, const double* d2, double ca, double cb, std::size_t n) {
  const __m256d va = _mm256_set1_pd(ca), vb = _mm256_set1_pd(cb);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    const __m256d c = _mm256_sub_pd(_mm256_loadu_pd(d1 + k), _mm256_loadu_pd(d2 + k));
    _mm256_storeu_pd(e + k, _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(e + k)), _mm256_mul_pd(vb, c)));
  }
  for (; k < n; ++k) e[k] = ca * e[k] + cb * (d1[k] - d2[k]);
}

void update_e_drude(double* e, double* j, const double* d1, const double* d2, double ca, double cb, double cj,
                    double alpha, double beta, std::size_t n) {
  const __m256d va = _mm256_set1_pd(ca), vb = _mm256_set1_pd(cb), vj = _mm256_set1_pd(cj);
  const __m256d val = _mm256_set1_pd(alpha), vbe = _mm256_set1_pd(beta);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    const __m256d old = _mm256_loadu_pd(e + k);
    const __m256d jk = _mm256_loadu_pd(j + k);
    const __m256d c = _mm256_sub_pd(_mm256_loadu_pd(d1 + k), _mm256_loadu_pd(d2 + k));
    const __m256d next =
        _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(va, old), _mm256_mul_pd(vb, c)), _mm256_mul_pd(vj, jk));
    _mm256_storeu_pd(j + k, _mm256_add_pd(_mm256_mul_pd(val, jk), _mm256_mul_pd(vbe, _mm256_add_pd(next, old))));
    _mm256_storeu_pd(e + k, next);
  }
  for (; k < n; ++k) {
    const double old = e[k];
    const double next = ca * old + cb * (d1[k] - d2[k]) - cj * j[k];
    j[k] = alpha * j[k] + beta * (next + old);
    e[k] = next;
  }
}

inline __m256d curl4(const double* a1, const double* a0, const double* b1, const double* b0, std::size_t k) {
  const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a1 + k), _mm256_loadu_pd(a0 + k));
  const __m256d d2 = _mm256_sub_pd(_mm256_loadu_pd(b1 + k), _mm256_loadu_pd(b0 + k));
  return _mm256_sub_pd(d1, d2);
}

void update_h_fused(double* h, const double* a1, const double* a0, const double* b1, const double* b0, double ch,
                    std::size_t n) {
  const __m256d vc = _mm256_set1_pd(ch);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    _mm256_storeu_pd(h + k, _mm256_sub_pd(_mm256_loadu_pd(h + k), _mm256_mul_pd(vc, curl4(a1, a0, b1, b0, k))));
  }
  for (; k < n; ++k) h[k] = h[k] - ch * ((a1[k] - a0[k]) - (b1[k] - b0[k]));
}

void update_e_fused(double* e, const double* a1, const double* a0, const double* b1, const double* b0, double ca,
                    double cb, std::size_t n) {
  const __m256d va = _mm256_set1_pd(ca), vb = _mm256_set1_pd(cb);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    _mm256_storeu_pd(e + k, _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(e + k)),
                                          _mm256_mul_pd(vb, curl4(a1, a0, b1, b0, k))));
  }
  for (; k < n; ++k) e[k] = ca * e[k] + cb * ((a1[k] - a0[k]) - (b1[k] - b0[k]));
}

void update_e_drude_fused(double* e, double* j, const double* a1, const double* a0, const double* b1,
                          const double* b0, double ca, double cb, double cj, double alpha, double beta,
                          std::size_t n) {
  const __m256d va = _mm256_set1_pd(ca), vb = _mm256_set1_pd(cb), vj = _mm256_set1_pd(cj);
  const __m256d val = _mm256_set1_pd(alpha), vbe = _mm256_set1_pd(beta);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    const __m256d old = _mm256_loadu_pd(e + k);
    const __m256d jk = _mm256_loadu_pd(j + k);
    const __m256d next = _mm256_sub_pd(
        _mm256_add_pd(_mm256_mul_pd(va, old), _mm256_mul_pd(vb, curl4(a1, a0, b1, b0, k))), _mm256_mul_pd(vj, jk));
    _mm256_storeu_pd(j + k, _mm256_add_pd(_mm256_mul_pd(val, jk), _mm256_mul_pd(vbe, _mm256_add_pd(next, old))));
    _mm256_storeu_pd(e + k, next);
  }
  for (; k < n; ++k) {
    const double old = e[k];
    const double next = ca * old + cb * ((a1[k] - a0[k]) - (b1[k] - b0[k])) - cj * j[k];
    j[k] = alpha * j[k] + beta * (next + old);
    e[k] = next;
  }
}

}  // namespace

const KernelSet kAvx2{"avx2",   diff,           cpml_uniform,   cpml_graded,    update_h,
                      update_e, update_e_drude, update_h_fused, update_e_fused, update_e_drude_fused};

}  // namespace ldoskit::fdtd::detail
