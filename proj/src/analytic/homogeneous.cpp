#include "ldoskit/analytic/homogeneous.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

namespace ldoskit::analytic {

namespace {

using cd = std::complex<double>;

// int_0^rho r e^{ikr} dr
cd radial_moment(cd k, double rho) {
  const cd u = cd(0, 1) * k * rho;
  if (std::abs(u) < 0.1) {
    // sum_n u^n rho^2 / (n! (n + 2))
    cd term(1.0, 0.0);
    cd sum(0.0, 0.0);
    for (int n = 0; n < 16; ++n) {
      if (n > 0) term *= u / static_cast<double>(n);
      sum += term / static_cast<double>(n + 2);
    }
    return sum * rho * rho;
  }
  return (std::exp(u) * (1.0 - u) - 1.0) / (k * k);
}

}  // namespace

double hom_gf_im(const Medium& m, Frequency e) {
  const auto n = refractive_index(m, e);
  if (n.imag() != 0.0) {
    throw DivergentGreenFunction("Im G(r,r) diverges in a lossy medium (" + m.describe() +
                                 "); use cube_averaged_gf for a finite emitter");
  }
  return vacuum_im_green(e) * n.real() * Medium::permeability();
}

cd cube_helmholtz_integral(cd k, double delta, double* achieved_rel_error) {
  using boost::math::quadrature::gauss_kronrod;
  const double h = 0.5 * delta;
  constexpr double tol = 1e-10;

  // Rays from the centre through the face x = h; dOmega = h / rho^3 dy dz.
  // Six faces, four symmetric quadrants per face. Lengths are scaled by h so
  // the quadrature works on O(1) numbers.
  const cd kh = k * h;
  double inner_err_max = 0.0;
  auto inner = [&](double z) {
    auto f = [&](double y) {
      const double rho = std::sqrt(1.0 + y * y + z * z);
      return radial_moment(kh, rho) / (rho * rho * rho);
    };
    double err = 0.0;
    const cd v = gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, 15, tol, &err);
    if (std::abs(v) > 0.0) inner_err_max = std::max(inner_err_max, err / std::abs(v));
    return v;
  };
  double outer_err = 0.0;
  const cd face = gauss_kronrod<double, 15>::integrate(inner, 0.0, 1.0, 15, tol, &outer_err);
  const double rel = std::max(inner_err_max, std::abs(face) > 0.0 ? outer_err / std::abs(face) : 0.0);
  if (achieved_rel_error) *achieved_rel_error = rel;
  if (!(rel <= 1e-6)) {
    throw ConvergenceError("cube quadrature reached only " + std::to_string(rel) + " relative",
                           rel);
  }
  return face * (h * h * 24.0 / (4.0 * constants::pi));
}

cd cube_averaged_gf(const Medium& m, Frequency e, Length delta) {
  if (!(delta.nanometers > 0.0)) throw std::domain_error("cube side must be positive");
  const double k0 = vacuum_wavevector(e);
  const cd eps = permittivity(m, e);
  const cd k = k0 * refractive_index(m, e);
  const double d = delta.meters();
  const cd pv = (2.0 * k0 * k0 / 3.0) * cube_helmholtz_integral(k, d);
  return (pv - 1.0 / (3.0 * eps)) / (d * d * d);
}

}  // namespace ldoskit::analytic
