#pragma once

#include <complex>
#include <string>
#include <variant>

#include "ldoskit/units.hpp"

namespace ldoskit {

/// Single-pole Drude metal, eps(w) = eps_inf - wp^2 / (w^2 + i gamma w).
struct DrudeModel {
  double eps_inf = 6.0;
  Frequency plasma_energy{7.89};
  Frequency damping_energy{0.051};

  /// Silver-like defaults used by every reproduction scenario.
  static DrudeModel silver() { return {}; }

  /// Throws std::invalid_argument when eps_inf < 1 or an energy is negative.
  void validate() const;

  friend bool operator==(const DrudeModel&, const DrudeModel&) = default;
};

struct VacuumMedium {
  friend bool operator==(const VacuumMedium&, const VacuumMedium&) = default;
};

struct DielectricMedium {
  double eps_real = 1.0;
  friend bool operator==(const DielectricMedium&, const DielectricMedium&) = default;
};

/// A non-magnetic (mu = 1) isotropic medium.
class Medium {
 public:
  using Kind = std::variant<VacuumMedium, DielectricMedium, DrudeModel>;

  Medium() = default;
  static Medium vacuum() { return Medium(VacuumMedium{}); }
  static Medium dielectric(double eps_real);
  static Medium drude(const DrudeModel& model);

  const Kind& kind() const { return kind_; }
  bool is_drude() const { return std::holds_alternative<DrudeModel>(kind_); }
  const DrudeModel& drude_model() const { return std::get<DrudeModel>(kind_); }

  /// High-frequency (instantaneous) permittivity seen by the field update.
  double eps_instantaneous() const;

  /// Relative permeability. Every medium here is non-magnetic.
  static constexpr double permeability() { return 1.0; }

  std::string describe() const;

  friend bool operator==(const Medium&, const Medium&) = default;

 private:
  explicit Medium(Kind k) : kind_(std::move(k)) {}
  Kind kind_{VacuumMedium{}};
};

/// Complex relative permittivity under the exp(-i w t) convention (Im >= 0).
std::complex<double> permittivity(const Medium& m, Frequency e);

/// Principal square root of the permittivity, Im n >= 0.
std::complex<double> refractive_index(const Medium& m, Frequency e);

/// Coefficients of the semi-implicit polarization-current update
///   J^{n+1} = alpha J^n + beta (E^{n+1} + E^n)
/// obtained from dJ/dt + gamma J = eps0 wp^2 E with both J and E averaged over
/// the step. kappa = (1 + alpha)/2 is the weight of J^n in the E update.
struct AdeCoefficients {
  double alpha = 0.0;
  double beta = 0.0;   // S/m
  double kappa = 0.0;
};

AdeCoefficients ade_coefficients(const DrudeModel& m, double dt);

/// Per-edge field-update coefficients:
///   E^{n+1} = ca E^n + cb (curl H - J_src - kappa J^n)
/// followed by the ADE update above when the edge is dispersive.
struct EdgeUpdate {
  double ca = 1.0;
  double cb = 0.0;
  AdeCoefficients ade{};
  bool dispersive = false;
};

EdgeUpdate edge_update(const Medium& m, double dt);

/// Steady-state permittivity realised by the discrete update at energy e.
/// Agrees with permittivity() to second order in w dt.
std::complex<double> discrete_permittivity(const Medium& m, double dt, Frequency e);

}  // namespace ldoskit
