#pragma once

#include <complex>
#include <vector>

#include "ldoskit/analytic/green_sample.hpp"
#include "ldoskit/analytic/homogeneous.hpp"
#include "ldoskit/materials.hpp"

namespace ldoskit::analytic {

enum class DipoleOrientation { tangential, radial };

/// Concentric spherical layers. media[0] is the core, media.back() the
/// unbounded background; radii[i] separates media[i] and media[i+1].
struct SphereStack {
  std::vector<Length> radii;
  std::vector<Medium> media;
  Length source_radius{};  // r_d: emitter (and observation) distance from the centre
  DipoleOrientation orientation = DipoleOrientation::tangential;

  /// Throws std::invalid_argument on unsorted radii, a media/radii size
  /// mismatch, or r_d on an interface.
  void validate() const;

  /// Index into media of the layer containing r_d.
  int source_layer() const;
};

/// Outgoing-per-regular (inner) and regular-per-outgoing (outer) amplitude
/// ratios of the radial solutions in the source layer, per polarisation:
/// inside that layer the radial solution below r_d is psi + inner * xi and
/// above r_d is xi + outer * psi, with psi = x j_l(x) and xi = x h1_l(x).
/// For a single sphere seen from outside, te_inner = -b_l and tm_inner = -a_l
/// in the Bohren-Huffman convention.
struct StackReflection {
  std::complex<long double> te_inner{}, te_outer{};
  std::complex<long double> tm_inner{}, tm_outer{};
};

/// Recursive interface matching (continuity of tangential E and H) across all
/// layers for multipole order l >= 1. Throws std::runtime_error if a matching
/// matrix is singular.
StackReflection stack_coefficients(const SphereStack& s, int l, Frequency e);

/// Per-order contributions to G^scatt(r_d, r_d) (1/m^3); entry l-1 is order l.
std::vector<std::complex<double>> scattered_gf_terms(const SphereStack& s, Frequency e, int l_max);

struct SeriesInfo {
  int terms_used = 0;
  double last_relative_term = 0.0;
};

inline constexpr int kSeriesHardCap = 150;

/// Scattered part of G_ii(r_d, r_d) for the stack's orientation. The series is
/// stopped once three consecutive orders each contribute < 1e-8 of the running
/// sum; throws ConvergenceError when order kSeriesHardCap is reached first.
std::complex<double> scattered_gf(const SphereStack& s, Frequency e, SeriesInfo* info = nullptr);

/// Projected LDOS outside the stack: n_bg + Im G^scatt / (k0^3 / 6 pi).
/// Requires r_d in the (lossless) background layer.
double total_ldos_outside(const SphereStack& s, Frequency e);

/// Real-cavity (local-field) Green function for an emitter at the centre of a
/// lossless core. Only the l = 1 TM wave reaches the centre. g.imag() is the
/// total Im G (homogeneous core part plus scattering from every shell);
/// g.real() is the finite reflected part only, since the homogeneous real part
/// diverges for a point emitter.
GreenSample real_cavity_gf_center(const SphereStack& s, Frequency e);

/// Radius of the sphere whose volume equals a cube of side delta.
Length equal_volume_radius(Length delta);

}  // namespace ldoskit::analytic
