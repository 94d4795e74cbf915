#include "ldoskit/fdtd/source.hpp"

#include <cmath>
#include <stdexcept>

namespace ldoskit::fdtd {

SourceWaveform SourceWaveform::covering(Frequency lo, Frequency hi, double edge_level, double amplitude,
                                        std::optional<Frequency> centre) {
  if (!(lo.energy_ev > 0.0) || !(hi.energy_ev > lo.energy_ev)) {
    throw std::invalid_argument("source: band must satisfy 0 < lo < hi");
  }
  if (!(edge_level >= 1e-4) || !(edge_level < 1.0)) {
    throw std::invalid_argument("source: band-edge level must lie in [1e-4, 1)");
  }
  const Frequency c = centre.value_or(Frequency{0.5 * (lo.energy_ev + hi.energy_ev)});
  const double wc = ev_to_omega(c);
  const double half_width = std::max(ev_to_omega(hi) - wc, wc - ev_to_omega(lo));
  if (!(half_width > 0.0)) throw std::invalid_argument("source: centre outside the band");
  SourceWaveform s;
  s.omega_c = wc;
  s.tau = 2.0 * std::sqrt(std::log(1.0 / edge_level)) / half_width;
  s.t0 = 6.0 * s.tau;
  s.amplitude = amplitude;
  return s;
}

double SourceWaveform::operator()(double t) const {
  if (t < 0.0 || t > off_time()) return 0.0;
  const double u = (t - t0) / tau;
  return amplitude * std::exp(-u * u) * std::sin(omega_c * (t - t0));
}

std::complex<double> SourceWaveform::spectrum(double omega) const {
  const double a = std::exp(-0.25 * (omega + omega_c) * (omega + omega_c) * tau * tau);
  const double b = std::exp(-0.25 * (omega - omega_c) * (omega - omega_c) * tau * tau);
  const std::complex<double> shift = std::polar(1.0, omega * t0);
  return amplitude * shift * std::sqrt(constants::pi) * tau * (a - b) / std::complex<double>(0.0, 2.0);
}

DftMonitor::DftMonitor(std::vector<Frequency> energies, double dt) : energies_(std::move(energies)), dt_(dt) {
  const std::size_t m = energies_.size();
  omega_.resize(m);
  e_.assign(m, {0.0, 0.0});
  j_.assign(m, {0.0, 0.0});
  phase_.resize(m);
  step_.resize(m);
  half_.resize(m);
  for (std::size_t f = 0; f < m; ++f) {
    omega_[f] = ev_to_omega(energies_[f]);
    step_[f] = std::polar(1.0, omega_[f] * dt_);
    half_[f] = std::polar(1.0, 0.5 * omega_[f] * dt_);
  }
  resync(0);
}

void DftMonitor::resync(long n) {
  for (std::size_t f = 0; f < omega_.size(); ++f) phase_[f] = std::polar(1.0, omega_[f] * dt_ * static_cast<double>(n));
  next_n_ = n;
}

void DftMonitor::accumulate(long n, double e, double j) {
  // The phasor is advanced by rotation and re-anchored exactly every 1024 steps.
  if (n != next_n_ || (n & 1023) == 0) resync(n);
  const double ew = e * dt_;
  const double jw = j * dt_;
  for (std::size_t f = 0; f < omega_.size(); ++f) {
    e_[f] += ew * phase_[f];
    if (jw != 0.0) j_[f] += jw * (phase_[f] * half_[f]);
    phase_[f] *= step_[f];
  }
  next_n_ = n + 1;
}

}  // namespace ldoskit::fdtd
