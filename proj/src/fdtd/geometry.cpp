#include "ldoskit/fdtd/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldoskit::fdtd {

std::array<bool, 3> GeometrySpec::mirror_axes() const {
  std::array<bool, 3> out{true, true, true};
  if (sphere && sphere->radius.nanometers > 0.0) {
    for (int a = 0; a < 3; ++a) out[a] = sphere->center_nm[a] == 0.0;
  }
  return out;
}

std::size_t MaterialMap::count(Component c, std::uint8_t material) const {
  const auto& v = id[static_cast<int>(c)];
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), material));
}

MaterialMap build_geometry(const GeometrySpec& g, const Lattice& lattice) {
  MaterialMap map;
  map.media.push_back(g.background);
  for (auto& v : map.id) v.assign(lattice.size(), 0);

  if (g.sphere && g.sphere->radius.nanometers > 0.0) {
    const auto& s = *g.sphere;
    if (s.radius.meters() < 3.0 * lattice.delta()) {
      throw std::invalid_argument("geometry: sphere radius below 3 cells is not resolved");
    }
    map.media.push_back(s.medium);
    const std::uint8_t sid = static_cast<std::uint8_t>(map.media.size() - 1);
    const double r2 = s.radius.meters() * s.radius.meters();
    const double cx = s.center_nm[0] * 1e-9, cy = s.center_nm[1] * 1e-9, cz = s.center_nm[2] * 1e-9;
    for (int c = 0; c < 3; ++c) {
      auto& v = map.id[c];
      for (int i = 0; i < lattice.n(0); ++i) {
        for (int j = 0; j < lattice.n(1); ++j) {
          for (int k = 0; k < lattice.n(2); ++k) {
            const auto p = lattice.e_position(static_cast<Component>(c), i, j, k);
            const double dx = p[0] - cx, dy = p[1] - cy, dz = p[2] - cz;
            if (dx * dx + dy * dy + dz * dz < r2) v[lattice.index(i, j, k)] = sid;
          }
        }
      }
    }
  }

  if (g.cavity) {
    map.media.push_back(*g.cavity);
    map.id[static_cast<int>(lattice.source_component())][lattice.source_index()] =
        static_cast<std::uint8_t>(map.media.size() - 1);
  }
  return map;
}

}  // namespace ldoskit::fdtd
