#include "ldoskit/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ldoskit/analytic/homogeneous.hpp"
#include "ldoskit/analytic/sphere.hpp"
#include "ldoskit/green/extract.hpp"

namespace ldoskit::cli {

namespace {

int cells_for(double length_nm, double delta_nm) {
  return std::max(1, static_cast<int>(std::ceil(length_nm / delta_nm - 1e-9)));
}

}  // namespace

FdtdSetup make_setup(const ScenarioConfig& c) {
  c.validate();
  FdtdSetup s;
  const double d = c.grid.delta.nanometers;
  s.grid.delta = c.grid.delta;
  s.grid.courant = c.grid.courant;
  s.grid.pml_cells = c.grid.pml_cells;
  s.grid.use_symmetry = c.grid.symmetry;
  s.component = c.source.component;

  switch (c.kind) {
    case ScenarioKind::vacuum:
      s.geometry.background = Medium::vacuum();
      break;
    case ScenarioKind::homogeneous:
      s.geometry.background = c.medium;
      break;
    case ScenarioKind::cavity_homog:
      s.geometry.background = c.medium;
      s.geometry.cavity = c.cavity_medium;
      break;
    case ScenarioKind::mnp:
    case ScenarioKind::cavity_mnp:
      s.geometry.background = c.background;
      s.geometry.sphere = fdtd::SphereRegion{c.radius, c.medium, {0.0, 0.0, -c.source_z_nm()}};
      if (c.kind == ScenarioKind::cavity_mnp) s.geometry.cavity = c.cavity_medium;
      break;
  }

  if (c.has_sphere()) {
    const double a = c.radius.nanometers, z = c.source_z_nm(), pad = c.grid.padding_nm;
    const int side = cells_for(a + pad, d);
    const int low = cells_for(std::max(z + a, 0.0) + pad, d);
    const int high = cells_for(std::max(a - z, 0.0) + pad, d);
    const int n = low + high;
    s.grid.interior_cells = {2 * side, 2 * side, n};
    s.grid.shift_cells = {0, 0, high - (n + 1) / 2};
  } else {
    const int m = c.grid.min_interior;
    s.grid.interior_cells = {m, m, m};
  }

  s.energies = c.frequencies.energies();
  const auto [lo, hi] = std::minmax_element(s.energies.begin(), s.energies.end());
  Frequency band_lo = *lo, band_hi = *hi;
  if (!(band_hi > band_lo)) {
    band_lo = {band_lo.energy_ev * 0.98};
    band_hi = {band_hi.energy_ev * 1.02};
  }
  s.source = fdtd::SourceWaveform::covering(band_lo, band_hi, c.source.edge_level);
  s.control.decay_threshold = c.run.decay_threshold;
  s.control.max_steps = c.run.max_steps;
  s.kernels = fdtd::parse_kernel_choice(c.run.kernels);
  return s;
}

SpectrumTable run_fdtd(const ScenarioConfig& c, const RunOptions& o) {
  FdtdSetup s = make_setup(c);
  fdtd::check_resolution(s.grid, s.geometry.background, s.energies.back());
  const std::array<bool, 3> mirror = s.geometry.mirror_axes();
  const auto lattice = fdtd::make_lattice(s.grid, s.component, mirror);
  auto materials = fdtd::build_geometry(s.geometry, lattice);
  fdtd::EngineOptions eo;
  eo.threads = std::max(1, o.threads);
  fdtd::Simulation sim(lattice, std::move(materials), s.source, s.energies, fdtd::select_kernels(s.kernels), eo);

  if (o.log) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: %d x %d x %d nodes (symmetry x%d), kernels %s", c.name.c_str(),
                  lattice.n(0), lattice.n(1), lattice.n(2), lattice.symmetry_factor(),
                  std::string(sim.kernels().name).c_str());
    o.log(buf);
    s.control.progress = [&, calls = 0](long step, double residual) mutable {
      if (++calls % 25 == 0) {
        std::snprintf(buf, sizeof buf, "%s: step %ld, residual %.2e", c.name.c_str(), step, residual);
        o.log(buf);
      }
    };
  }
  const auto run = sim.run(s.control);
  const auto samples = green::extract_run(run, c.grid.delta, s.component);

  SpectrumTable t;
  t.scenario_hash = scenario_hash(c);
  t.delta_nm = c.grid.delta.nanometers;
  for (const auto& g : samples) {
    t.rows.push_back({g.energy.energy_ev, g.g, g.purcell, run.steps, run.residual, run.decayed ? "ok" : "not_decayed"});
  }
  return t;
}

SpectrumTable run_analytic(const ScenarioConfig& c) {
  c.validate();
  SpectrumTable t;
  t.scenario_hash = scenario_hash(c);
  const Length delta = c.grid.delta;
  const double z = c.source_z_nm();
  const auto orientation = c.source.component == fdtd::Component::z ? analytic::DipoleOrientation::radial
                                                                      : analytic::DipoleOrientation::tangential;
  const bool outside = c.kind == ScenarioKind::mnp && z > c.radius.nanometers;
  t.delta_nm = outside ? 0.0 : delta.nanometers;
  if (c.kind == ScenarioKind::cavity_mnp && z != 0.0) {
    throw std::invalid_argument("analytic: the real-cavity reference needs the emitter at the sphere centre");
  }

  for (const Frequency e : c.frequencies.energies()) {
    GreenSample g;
    switch (c.kind) {
      case ScenarioKind::vacuum:
        g = GreenSample::from_green(e, analytic::cube_averaged_gf(Medium::vacuum(), e, delta));
        break;
      case ScenarioKind::homogeneous:
        g = GreenSample::from_green(e, analytic::cube_averaged_gf(c.medium, e, delta));
        break;
      case ScenarioKind::mnp:
        if (outside) {
          analytic::SphereStack st{{c.radius}, {c.medium, c.background}, {z}, orientation};
          const auto scat = analytic::scattered_gf(st, e);
          g = GreenSample::from_green(e, scat + std::complex<double>(0.0, analytic::hom_gf_im(c.background, e)));
        } else {
          g = GreenSample::from_green(e, analytic::cube_averaged_gf(c.medium, e, delta));
        }
        break;
      case ScenarioKind::cavity_homog: {
        analytic::SphereStack st{{analytic::equal_volume_radius(delta)}, {c.cavity_medium, c.medium}, {0.0}};
        g = analytic::real_cavity_gf_center(st, e);
        break;
      }
      case ScenarioKind::cavity_mnp: {
        analytic::SphereStack st{
            {analytic::equal_volume_radius(delta), c.radius}, {c.cavity_medium, c.medium, c.background}, {0.0}};
        g = analytic::real_cavity_gf_center(st, e);
        break;
      }
    }
    t.rows.push_back({e.energy_ev, g.g, g.purcell, 0, 0.0, "analytic"});
  }
  return t;
}

}  // namespace ldoskit::cli
