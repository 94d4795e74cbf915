#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ldoskit/materials.hpp"
#include "ldoskit/units.hpp"

namespace ldoskit::fdtd {

/// User-facing grid parameters.
struct GridSpec {
  Length delta{2.0};
  double courant = 0.5 / 1.7320508075688772;  // S = c dt / delta
  int pml_cells = 12;
  /// Interior (non-PML) cells per axis for the full, unreduced domain.
  std::array<int, 3> interior_cells{60, 60, 60};
  /// Moves the interior box by this many cells towards +axis relative to a
  /// box centred on the source. Must be zero on mirrored axes.
  std::array<int, 3> shift_cells{0, 0, 0};
  /// Allow mirror planes through the source when the geometry permits.
  bool use_symmetry = true;

  /// Throws std::invalid_argument for delta <= 0, courant outside
  /// (0, 0.99/sqrt(3)], negative PML, fewer than 2 interior cells or a
  /// shift that leaves fewer than one interior cell on either side of the source.
  void validate() const;

  double dt() const;
};

/// At least 20 cells per wavelength in the background at the highest energy.
/// Throws std::invalid_argument otherwise.
void check_resolution(const GridSpec& g, const Medium& background, Frequency highest);

/// What closes each end of an axis.
///   pml          CPML shell backed by a PEC wall
///   mirror_node  symmetry plane through node index 1 (ghost layer 0)
///   mirror_half  symmetry plane at index 1.5 (ghost layer 1, layer 0 unused)
///   periodic     wrap-around; layers 0 and n-1 are copies of n-2 and 1
enum class Boundary { pml, mirror_node, mirror_half, periodic };

struct AxisLayout {
  int n = 0;            // node count
  double origin = 0.0;  // index coordinate of the physical origin (source edge midpoint)
  Boundary low = Boundary::pml;
  Boundary high = Boundary::pml;
  int pml_low = 0;   // CPML cells at the low end
  int pml_high = 0;  // CPML cells at the high end
};

enum class Component { x = 0, y = 1, z = 2 };

/// Node-indexed staggered lattice. Flat index (i * ny + j) * nz + k; rows run
/// along z. Component c of E sits at the node shifted by +1/2 along c; component
/// c of H at the node shifted by +1/2 along the other two axes.
class Lattice {
 public:
  Lattice() = default;
  Lattice(double delta_m, double dt, std::array<AxisLayout, 3> axes, std::array<int, 3> source_node,
          Component source_component);

  double delta() const { return delta_; }
  double dt() const { return dt_; }
  const AxisLayout& axis(int a) const { return axes_[a]; }
  int n(int a) const { return axes_[a].n; }
  std::size_t size() const { return static_cast<std::size_t>(axes_[0].n) * axes_[1].n * axes_[2].n; }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * axes_[1].n + j) * axes_[2].n + k;
  }
  const std::array<int, 3>& source_node() const { return source_; }
  Component source_component() const { return source_component_; }
  std::size_t source_index() const { return index(source_[0], source_[1], source_[2]); }

  /// Physical position (m) of an E edge midpoint relative to the source edge midpoint.
  std::array<double, 3> e_position(Component c, int i, int j, int k) const;

  /// Mirror-reduction factor relative to the full domain (1, 2, 4 or 8).
  int symmetry_factor() const;

 private:
  double delta_ = 0.0;
  double dt_ = 0.0;
  std::array<AxisLayout, 3> axes_{};
  std::array<int, 3> source_{};
  Component source_component_ = Component::x;
};

/// Lays out the domain around a source edge of the given component. mirror[a]
/// requests a symmetry plane normal to axis a through the source; it is
/// ignored unless spec.use_symmetry is set.
Lattice make_lattice(const GridSpec& spec, Component source_component, std::array<bool, 3> mirror);

/// CPML profile along one axis, sampled at nodes (used by E updates) and at
/// half nodes (used by H updates). in_pml is zero outside the absorbing shell.
struct CpmlProfile {
  std::vector<double> b_node, c_node, inv_kappa_node;
  std::vector<double> b_half, c_half, inv_kappa_half;
  std::vector<unsigned char> in_node, in_half;
};

struct CpmlParams {
  int grading_order = 3;
  double kappa_max = 5.0;
  double sigma_fraction = 0.8;  // sigma_max / sigma_opt, sigma_opt = (m + 1) / (eta0 delta sqrt(eps))
  double alpha_max = 2e3;       // S/m, CFS shift (about 0.05 eps0 w at 2.85 eV)
  double eps_background = 0.0;  // <= 0: take the background medium's eps_inf
};

CpmlProfile make_cpml_profile(const AxisLayout& axis, double delta, double dt, const CpmlParams& p);

}  // namespace ldoskit::fdtd
