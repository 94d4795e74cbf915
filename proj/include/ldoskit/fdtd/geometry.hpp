#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ldoskit/fdtd/grid.hpp"
#include "ldoskit/materials.hpp"

namespace ldoskit::fdtd {

struct SphereRegion {
  Length radius{};
  Medium medium;
  /// Centre relative to the source edge midpoint, nm.
  std::array<double, 3> center_nm{};
};

/// Scene description in physical coordinates centred on the source edge.
/// The cavity, when present, replaces the medium of the source edge only
/// (a single Delta^3 cell around the emitter).
struct GeometrySpec {
  Medium background = Medium::vacuum();
  std::optional<SphereRegion> sphere;
  std::optional<Medium> cavity;

  /// Axes along which a mirror plane through the source leaves the scene unchanged.
  std::array<bool, 3> mirror_axes() const;
};

/// Material index per E edge, one array per component; media[0] is the background.
struct MaterialMap {
  std::vector<Medium> media;
  std::array<std::vector<std::uint8_t>, 3> id;

  std::size_t count(Component c, std::uint8_t material) const;
};

/// Staircased assignment: an E edge takes the sphere medium iff its midpoint
/// lies strictly inside the sphere. Throws std::invalid_argument for a sphere
/// with 0 < radius < 3 delta; a zero radius means no sphere.
MaterialMap build_geometry(const GeometrySpec& g, const Lattice& lattice);

}  // namespace ldoskit::fdtd
