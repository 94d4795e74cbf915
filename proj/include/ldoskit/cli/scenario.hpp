#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ldoskit/cli/config.hpp"
#include "ldoskit/cli/csv.hpp"
#include "ldoskit/fdtd/engine.hpp"
#include "ldoskit/fdtd/kernels.hpp"

namespace ldoskit::cli {

/// Everything the engine needs for one scenario.
struct FdtdSetup {
  fdtd::GridSpec grid;
  fdtd::GeometrySpec geometry;
  fdtd::Component component = fdtd::Component::y;
  std::vector<Frequency> energies;
  fdtd::SourceWaveform source;
  fdtd::RunControl control;
  fdtd::KernelChoice kernels = fdtd::KernelChoice::automatic;
};

/// Sphere scenarios get the sphere's bounding box plus padding on every side,
/// in physical units so that both grids see the same domain; unbounded media
/// get min_interior cells per axis. The box is centred on the source except
/// along z, where it is shifted to enclose the sphere.
FdtdSetup make_setup(const ScenarioConfig& c);

using LogFn = std::function<void(const std::string&)>;

struct RunOptions {
  int threads = 1;
  LogFn log;  // progress lines; may be empty
};

/// FDTD run plus Green-function extraction.
SpectrumTable run_fdtd(const ScenarioConfig& c, const RunOptions& o = {});

/// Reference curve for the scenario:
///   vacuum, homogeneous   cube-averaged GF at the grid's delta
///   mnp, outside          multilayer-sphere series (point emitter)
///   mnp, inside           cube-averaged GF of the sphere medium
///   cavity_homog          real-cavity GF, sphere of the cell's volume
///   cavity_mnp            real-cavity GF inside the sphere (emitter at the centre only)
SpectrumTable run_analytic(const ScenarioConfig& c);

}  // namespace ldoskit::cli
