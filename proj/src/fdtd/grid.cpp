#include "ldoskit/fdtd/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldoskit::fdtd {

void GridSpec::validate() const {
  if (!(delta.nanometers > 0.0)) throw std::invalid_argument("grid: delta must be positive");
  if (!(courant > 0.0) || courant > 0.99 / std::sqrt(3.0)) {
    throw std::invalid_argument("grid: courant must lie in (0, 0.99/sqrt(3)]");
  }
  if (pml_cells < 0) throw std::invalid_argument("grid: pml_cells must be >= 0");
  for (int a = 0; a < 3; ++a) {
    if (interior_cells[a] < 2) throw std::invalid_argument("grid: need at least 2 interior cells per axis");
    const int h = (interior_cells[a] + 1) / 2;
    if (h - shift_cells[a] < 1 || h + shift_cells[a] < 1) {
      throw std::invalid_argument("grid: interior shift leaves the source outside the interior");
    }
  }
}

double GridSpec::dt() const { return courant * delta.meters() / constants::c0; }

void check_resolution(const GridSpec& g, const Medium& background, Frequency highest) {
  const double n = std::max(1.0, refractive_index(background, highest).real());
  const double lambda_nm = 2.0 * constants::pi / (vacuum_wavevector(highest) * n) * 1e9;
  if (lambda_nm < 20.0 * g.delta.nanometers) {
    throw std::invalid_argument("grid: only " + std::to_string(lambda_nm / g.delta.nanometers) +
                                " cells per wavelength at " + std::to_string(highest.energy_ev) +
                                " eV (need >= 20)");
  }
}

Lattice::Lattice(double delta_m, double dt, std::array<AxisLayout, 3> axes, std::array<int, 3> source_node,
                 Component source_component)
    : delta_(delta_m), dt_(dt), axes_(axes), source_(source_node), source_component_(source_component) {
  for (int a = 0; a < 3; ++a) {
    if (axes_[a].n < 3) throw std::invalid_argument("lattice: each axis needs at least 3 nodes");
    if (source_[a] < 0 || source_[a] >= axes_[a].n) throw std::invalid_argument("lattice: source outside");
  }
}

std::array<double, 3> Lattice::e_position(Component c, int i, int j, int k) const {
  const int ci = static_cast<int>(c);
  const int idx[3] = {i, j, k};
  std::array<double, 3> p{};
  for (int a = 0; a < 3; ++a) {
    const double shift = a == ci ? 0.5 : 0.0;
    p[a] = (idx[a] + shift - axes_[a].origin) * delta_;
  }
  return p;
}

int Lattice::symmetry_factor() const {
  int f = 1;
  for (const auto& ax : axes_) {
    if (ax.low == Boundary::mirror_node || ax.low == Boundary::mirror_half) f *= 2;
  }
  return f;
}

Lattice make_lattice(const GridSpec& spec, Component source_component, std::array<bool, 3> mirror) {
  spec.validate();
  const int d = static_cast<int>(source_component);
  const int p = spec.pml_cells;
  std::array<AxisLayout, 3> axes{};
  std::array<int, 3> src{};
  for (int a = 0; a < 3; ++a) {
    const int h = (spec.interior_cells[a] + 1) / 2;  // interior cells on each side of the source
    AxisLayout& ax = axes[a];
    ax.high = Boundary::pml;
    ax.pml_high = p;
    const int s = spec.shift_cells[a];
    if (spec.use_symmetry && mirror[a]) {
      if (s != 0) throw std::invalid_argument("grid: a mirrored axis cannot be shifted");
      ax.low = a == d ? Boundary::mirror_half : Boundary::mirror_node;
      ax.pml_low = 0;
      ax.origin = a == d ? 1.5 : 1.0;
      ax.n = h + p + (a == d ? 3 : 2);
      src[a] = 1;
    } else {
      ax.low = Boundary::pml;
      ax.pml_low = p;
      ax.origin = p + h - s + (a == d ? 0.5 : 0.0);
      ax.n = 2 * (p + h) + (a == d ? 2 : 1);
      src[a] = p + h - s;
    }
  }
  return Lattice(spec.delta.meters(), spec.dt(), axes, src, source_component);
}

CpmlProfile make_cpml_profile(const AxisLayout& axis, double delta, double dt, const CpmlParams& p) {
  const int n = axis.n;
  CpmlProfile out;
  for (auto* v : {&out.b_node, &out.c_node, &out.b_half, &out.c_half}) v->assign(n, 0.0);
  out.inv_kappa_node.assign(n, 1.0);
  out.inv_kappa_half.assign(n, 1.0);
  out.in_node.assign(n, 0);
  out.in_half.assign(n, 0);

  const double m = p.grading_order;
  const double sigma_max = p.sigma_fraction * (m + 1.0) / (constants::eta0 * delta * std::sqrt(std::max(p.eps_background, 1.0)));
  const double lo_face = axis.low == Boundary::pml ? axis.pml_low : -1.0;
  const double hi_face = axis.high == Boundary::pml ? (n - 1) - axis.pml_high : n + 1.0;

  auto depth = [&](double x) {
    if (axis.low == Boundary::pml && axis.pml_low > 0 && x < lo_face) return (lo_face - x) / axis.pml_low;
    if (axis.high == Boundary::pml && axis.pml_high > 0 && x > hi_face) return (x - hi_face) / axis.pml_high;
    return 0.0;
  };
  auto fill = [&](double x, double& b, double& c, double& ik, unsigned char& in) {
    const double r = std::min(1.0, depth(x));
    if (r <= 0.0) return;
    const double g = std::pow(r, m);
    const double sigma = sigma_max * g;
    const double kappa = 1.0 + (p.kappa_max - 1.0) * g;
    const double alpha = p.alpha_max * (1.0 - r);
    b = std::exp(-(sigma / kappa + alpha) * dt / constants::eps0);
    const double den = sigma * kappa + kappa * kappa * alpha;
    c = den > 0.0 ? sigma / den * (b - 1.0) : 0.0;
    ik = 1.0 / kappa;
    in = 1;
  };
  for (int i = 0; i < n; ++i) {
    fill(i, out.b_node[i], out.c_node[i], out.inv_kappa_node[i], out.in_node[i]);
    fill(i + 0.5, out.b_half[i], out.c_half[i], out.inv_kappa_half[i], out.in_half[i]);
  }
  return out;
}

}  // namespace ldoskit::fdtd
