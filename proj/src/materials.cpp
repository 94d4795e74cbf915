#include "ldoskit/materials.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ldoskit {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("time step must be positive");
  }
}
}  // namespace

void DrudeModel::validate() const {
  if (!(eps_inf >= 1.0)) throw std::invalid_argument("Drude eps_inf must be >= 1");
  if (!(plasma_energy.energy_ev >= 0.0)) {
    throw std::invalid_argument("Drude plasma energy must be >= 0");
  }
  if (!(damping_energy.energy_ev >= 0.0)) {
    throw std::invalid_argument("Drude damping energy must be >= 0");
  }
}

Medium Medium::dielectric(double eps_real) {
  if (!(eps_real > 0.0) || !std::isfinite(eps_real)) {
    throw std::invalid_argument("dielectric permittivity must be positive");
  }
  return Medium(DielectricMedium{eps_real});
}

Medium Medium::drude(const DrudeModel& model) {
  model.validate();
  return Medium(model);
}

double Medium::eps_instantaneous() const {
  return std::visit(overloaded{[](const VacuumMedium&) { return 1.0; },
                               [](const DielectricMedium& d) { return d.eps_real; },
                               [](const DrudeModel& d) { return d.eps_inf; }},
                    kind_);
}

std::string Medium::describe() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const VacuumMedium&) { os << "vacuum"; },
                        [&](const DielectricMedium& d) { os << "dielectric(eps=" << d.eps_real << ")"; },
                        [&](const DrudeModel& d) {
                          os << "drude(eps_inf=" << d.eps_inf << ", wp=" << d.plasma_energy.energy_ev
                             << " eV, gamma=" << d.damping_energy.energy_ev << " eV)";
                        }},
             kind_);
  return os.str();
}

std::complex<double> permittivity(const Medium& m, Frequency e) {
  if (!(e.energy_ev > 0.0)) throw std::domain_error("permittivity requires a positive energy");
  return std::visit(
      overloaded{[](const VacuumMedium&) { return std::complex<double>(1.0, 0.0); },
                 [](const DielectricMedium& d) { return std::complex<double>(d.eps_real, 0.0); },
                 [&](const DrudeModel& d) {
                   // Energies in eV; the ratio is dimensionless.
                   const double w = e.energy_ev;
                   const double wp = d.plasma_energy.energy_ev;
                   const double g = d.damping_energy.energy_ev;
                   return d.eps_inf - wp * wp / std::complex<double>(w * w, g * w);
                 }},
      m.kind());
}

std::complex<double> refractive_index(const Medium& m, Frequency e) {
  auto eps = permittivity(m, e);
  // Keep a signed zero from flipping the branch.
  if (eps.imag() == 0.0) eps = {eps.real(), 0.0};
  return std::sqrt(eps);
}

AdeCoefficients ade_coefficients(const DrudeModel& m, double dt) {
  require_dt(dt);
  m.validate();
  const double wp = ev_to_omega_or_zero(m.plasma_energy);
  const double g = ev_to_omega_or_zero(m.damping_energy);
  const double half = 0.5 * g * dt;
  AdeCoefficients c;
  c.alpha = (1.0 - half) / (1.0 + half);
  c.beta = constants::eps0 * wp * wp * 0.5 * dt / (1.0 + half);
  c.kappa = 0.5 * (1.0 + c.alpha);
  return c;
}

EdgeUpdate edge_update(const Medium& m, double dt) {
  require_dt(dt);
  EdgeUpdate u;
  const double e_dt = constants::eps0 * m.eps_instantaneous() / dt;
  if (m.is_drude()) {
    u.ade = ade_coefficients(m.drude_model(), dt);
    u.dispersive = true;
    u.ca = (e_dt - 0.5 * u.ade.beta) / (e_dt + 0.5 * u.ade.beta);
    u.cb = 1.0 / (e_dt + 0.5 * u.ade.beta);
  } else {
    u.ca = 1.0;
    u.cb = 1.0 / e_dt;
  }
  return u;
}

std::complex<double> discrete_permittivity(const Medium& m, double dt, Frequency e) {
  require_dt(dt);
  const double w = ev_to_omega(e);
  if (!m.is_drude()) return permittivity(m, e);
  const auto& d = m.drude_model();
  const double wp = ev_to_omega_or_zero(d.plasma_energy);
  const double g = ev_to_omega_or_zero(d.damping_energy);
  // The trapezoidal ADE sees w through W = (2/dt) tan(w dt/2).
  const double wt = 2.0 / dt * std::tan(0.5 * w * dt);
  return d.eps_inf - wp * wp / std::complex<double>(wt * wt, g * wt);
}

}  // namespace ldoskit
