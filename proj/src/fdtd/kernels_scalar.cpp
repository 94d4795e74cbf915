#include "kernels_impl.hpp"

namespace ldoskit::fdtd::detail {

namespace {

void diff(const double* a, const double* b, double* d, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) d[k] = a[k] - b[k];
}

void cpml_uniform(double* psi, double* d, double b, double c, double inv_kappa, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    psi[k] = b * psi[k] + c * d[k];
    d[k] = d[k] * inv_kappa + psi[k];
  }
}

void cpml_graded(double* psi, double* d, const double* b, const double* c, const double* inv_kappa,
                 std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    psi[k] = b[k] * psi[k] + c[k] * d[k];
    d[k] = d[k] * inv_kappa[k] + psi[k];
  }
}

void update_h(double* h, const double* d1, const double* d2, double ch, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) h[k] = h[k] - ch * (d1[k] - d2[k]);
}

void update_e(double* e, const double* d1, const double* d2, double ca, double cb, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) e[k] = ca * e[k] + cb * (d1[k] - d2[k]);
}

void update_e_drude(double* e, double* j, const double* d1, const double* d2, double ca, double cb, double cj,
                    double alpha, double beta, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double old = e[k];
    const double next = ca * old + cb * (d1[k] - d2[k]) - cj * j[k];
    j[k] = alpha * j[k] + beta * (next + old);
    e[k] = next;
  }
}

void update_h_fused(double* h, const double* a1, const double* a0, const double* b1, const double* b0, double ch,
                    std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) h[k] = h[k] - ch * ((a1[k] - a0[k]) - (b1[k] - b0[k]));
}

void update_e_fused(double* e, const double* a1, const double* a0, const double* b1, const double* b0, double ca,
                    double cb, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) e[k] = ca * e[k] + cb * ((a1[k] - a0[k]) - (b1[k] - b0[k]));
}

void update_e_drude_fused(double* e, double* j, const double* a1, const double* a0, const double* b1,
                          const double* b0, double ca, double cb, double cj, double alpha, double beta,
                          std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double old = e[k];
    const double next = ca * old + cb * ((a1[k] - a0[k]) - (b1[k] - b0[k])) - cj * j[k];
    j[k] = alpha * j[k] + beta * (next + old);
    e[k] = next;
  }
}

}  // namespace

const KernelSet kScalar{"scalar",       diff,           cpml_uniform,   cpml_graded,         update_h,
                        update_e,       update_e_drude, update_h_fused, update_e_fused, update_e_drude_fused};

}  // namespace ldoskit::fdtd::detail
