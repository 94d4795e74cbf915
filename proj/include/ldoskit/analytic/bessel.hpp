#pragma once

#include <complex>
#include <vector>

namespace ldoskit::analytic {

enum class BesselKind { j, h1 };

/// Spherical Bessel value z_l(x) together with the Riccati form u_l(x) = x z_l(x)
/// and its derivative u_l'(x).
struct SphericalBesselValue {
  std::complex<double> value;
  std::complex<double> riccati;
  std::complex<double> riccati_derivative;
};

/// Evaluates j_l or h1_l at complex x. Throws std::domain_error for h1 at x = 0
/// or l < 0, and std::overflow_error when the result is not representable in
/// double precision (large l at small |x|).
SphericalBesselValue spherical_bessel(BesselKind kind, int l, std::complex<double> x);

/// Riccati-Bessel functions psi_l = x j_l and xi_l = x h1_l with derivatives for
/// l = 0..l_max, held in extended precision so that l ~ 150 at |x| ~ 0.01 stays
/// in range.
struct RiccatiTable {
  using value_type = std::complex<long double>;
  std::complex<long double> x;
  std::vector<value_type> psi, dpsi, xi, dxi;

  int l_max() const { return static_cast<int>(psi.size()) - 1; }
};

/// Builds the table. psi uses a downward ratio recurrence; xi an upward one.
RiccatiTable riccati_table(int l_max, std::complex<long double> x);

}  // namespace ldoskit::analytic
