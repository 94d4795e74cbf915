#pragma once

#include <complex>
#include <stdexcept>

#include "ldoskit/materials.hpp"
#include "ldoskit/units.hpp"

namespace ldoskit::analytic {

/// Raised when the equal-argument Green function of a lossy medium is
/// requested: both real and imaginary parts diverge at coincidence.
class DivergentGreenFunction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an adaptive quadrature or series misses its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Im G_ii(r, r) = k0^3 n / (6 pi) for a lossless medium (Im n = 0).
double hom_gf_im(const Medium& m, Frequency e);

/// Homogeneous Green function averaged over a cube of side delta centred on the
/// source point:
///
///   <G_ii> = (1/delta^3) [ PV int_cube G_ii(0, r') d^3r'  -  1/(3 eps) ]
///
/// with G = (1/eps)(grad grad + k^2) e^{ikR}/(4 pi R). The -1/(3 eps) is the
/// dyadic delta term (reducing to the familiar -1/3 in vacuum). Over a cube the
/// principal-value integral of the static r^-3 part vanishes by symmetry, and
/// the trace of the remainder is 2 k0^2 e^{ikR}/(4 pi R), so
///
///   PV int_cube G_ii = (2 k0^2 / 3) int_cube e^{ikR}/(4 pi R) d^3r.
///
/// The radial integral is done in closed form along rays to the cube faces and
/// the face integral by adaptive Gauss-Kronrod to 1e-10 relative. Throws
/// ConvergenceError when the achieved estimate is worse than 1e-6.
std::complex<double> cube_averaged_gf(const Medium& m, Frequency e, Length delta);

/// int_cube e^{ikR}/(4 pi R) d^3r for a cube of side delta (metres) and complex
/// wavenumber k (1/m). Exposed for testing.
std::complex<double> cube_helmholtz_integral(std::complex<double> k, double delta,
                                             double* achieved_rel_error = nullptr);

}  // namespace ldoskit::analytic
