#include "ldoskit/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldoskit {

namespace {
void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(what) + " must be positive and finite, got " +
                            std::to_string(v));
  }
}
}  // namespace

double ev_to_omega(Frequency e) {
  require_positive(e.energy_ev, "photon energy");
  return e.energy_ev * (constants::q_e / constants::hbar);
}

double ev_to_omega_or_zero(Frequency e) {
  if (e.energy_ev == 0.0) return 0.0;
  return ev_to_omega(e);
}

Frequency omega_to_ev(double omega) {
  require_positive(omega, "angular frequency");
  return {omega * (constants::hbar / constants::q_e)};
}

double vacuum_wavevector(Frequency e) { return ev_to_omega(e) / constants::c0; }

double vacuum_im_green(Frequency e) {
  const double k0 = vacuum_wavevector(e);
  return k0 * k0 * k0 / (6.0 * constants::pi);
}

}  // namespace ldoskit
