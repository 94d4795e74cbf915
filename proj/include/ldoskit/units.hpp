#pragma once

// Physical constants and the eV/nm <-> SI conversions used throughout.
//
// Conventions (fixed for the whole toolkit):
//   * Internal arithmetic is SI. Configuration and file IO use eV and nm.
//   * Time-harmonic fields vary as exp(-i omega t). A passive medium therefore
//     has Im(eps) >= 0, and forward DFTs accumulate f(t) exp(+i omega t) dt.

#include <numbers>

namespace ldoskit {

namespace constants {
inline constexpr double c0 = 299'792'458.0;                  // m/s
inline constexpr double mu0 = 1.25663706212e-6;              // N/A^2
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);        // F/m
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double q_e = 1.602176634e-19;               // C
inline constexpr double eta0 = mu0 * c0;                     // ohm
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// Photon energy, hbar*omega, in eV.
struct Frequency {
  double energy_ev = 0.0;

  friend constexpr bool operator==(Frequency, Frequency) = default;
  friend constexpr auto operator<=>(Frequency, Frequency) = default;
};

/// Length in nanometres.
struct Length {
  double nanometers = 0.0;

  constexpr double meters() const { return nanometers * 1e-9; }
  friend constexpr bool operator==(Length, Length) = default;
  friend constexpr auto operator<=>(Length, Length) = default;
};

constexpr Frequency operator""_eV(long double v) { return {static_cast<double>(v)}; }
constexpr Length operator""_nm(long double v) { return {static_cast<double>(v)}; }

/// Angular frequency in rad/s. Throws std::domain_error for e <= 0.
double ev_to_omega(Frequency e);

/// Like ev_to_omega but also accepts zero (rates and plasma energies may vanish).
double ev_to_omega_or_zero(Frequency e);

/// Inverse of ev_to_omega. Throws std::domain_error for omega <= 0.
Frequency omega_to_ev(double omega);

/// Vacuum wavevector k0 = omega / c in 1/m. Throws std::domain_error for e <= 0.
double vacuum_wavevector(Frequency e);

/// Im G of vacuum at coincidence, k0^3 / (6 pi), in 1/m^3.
double vacuum_im_green(Frequency e);

}  // namespace ldoskit
