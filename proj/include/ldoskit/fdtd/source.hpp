#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ldoskit/units.hpp"

namespace ldoskit::fdtd {

/// Gaussian-modulated sine current density (A/m^2):
///   J(t) = A exp(-((t - t0)/tau)^2) sin(wc (t - t0)),
/// switched off (exactly zero) for t > 2 t0.
struct SourceWaveform {
  double omega_c = 0.0;
  double tau = 0.0;
  double t0 = 0.0;
  double amplitude = 1.0;

  /// Pulse whose spectrum at the band edges is edge_level of its peak. The
  /// centre defaults to the band midpoint; t0 = 6 tau. Throws
  /// std::invalid_argument unless 1e-4 <= edge_level < 1 and lo < hi.
  static SourceWaveform covering(Frequency lo, Frequency hi, double edge_level = 1e-2, double amplitude = 1.0,
                                 std::optional<Frequency> centre = std::nullopt);

  double operator()(double t) const;
  double off_time() const { return 2.0 * t0; }

  /// Continuous transform int J(t) e^{i w t} dt (ignoring the switch-off).
  std::complex<double> spectrum(double omega) const;
};

/// Running DFTs of the source-edge field (sampled at integer steps) and of the
/// injected current (sampled at half steps):
///   E(w) = sum_n E^n e^{i w n dt} dt,  J(w) = sum_n J^{n+1/2} e^{i w (n+1/2) dt} dt.
class DftMonitor {
 public:
  DftMonitor() = default;
  DftMonitor(std::vector<Frequency> energies, double dt);

  /// Adds the samples of step n: e at t = n dt and j at t = (n + 1/2) dt.
  void accumulate(long n, double e, double j);

  const std::vector<Frequency>& energies() const { return energies_; }
  const std::vector<std::complex<double>>& e() const { return e_; }
  const std::vector<std::complex<double>>& j() const { return j_; }

 private:
  void resync(long n);

  std::vector<Frequency> energies_;
  std::vector<double> omega_;
  double dt_ = 0.0;
  std::vector<std::complex<double>> e_, j_;
  std::vector<std::complex<double>> phase_, step_, half_;
  long next_n_ = 0;
};

}  // namespace ldoskit::fdtd
