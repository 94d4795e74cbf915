#pragma once

#include <complex>

#include "ldoskit/units.hpp"

namespace ldoskit {

/// Equal-argument Green function G_ii(r, r; w) and the quantities derived from it.
///
/// G follows E(r) = (1/eps0) * integral G(r, r') P(r') d^3r', so a vacuum dipole
/// has Im G = k0^3 / (6 pi). ldos_rel is Im G normalised by that vacuum value,
/// which is also the Purcell factor.
struct GreenSample {
  Frequency energy{};
  std::complex<double> g{};  // 1/m^3
  double ldos_rel = 0.0;
  double purcell = 0.0;

  static GreenSample from_green(Frequency e, std::complex<double> g) {
    const double rho = g.imag() / vacuum_im_green(e);
    return {e, g, rho, rho};
  }
};

}  // namespace ldoskit
