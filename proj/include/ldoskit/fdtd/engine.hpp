#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldoskit/fdtd/geometry.hpp"
#include "ldoskit/fdtd/grid.hpp"
#include "ldoskit/fdtd/kernels.hpp"
#include "ldoskit/fdtd/source.hpp"

namespace ldoskit::fdtd {

/// Thrown when a field becomes NaN or infinite.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

struct RunControl {
  double decay_threshold = 1e-7;  // stop when the windowed |E_src| max falls below this times its peak
  long max_steps = 4'000'000;
  long window_steps = 0;          // 0: two periods at the lowest monitored energy
  long nan_check_interval = 1000;
  std::function<void(long step, double residual)> progress;
};

struct RunResult {
  std::vector<Frequency> energies;
  std::vector<std::complex<double>> e_src;  // V/m * s
  std::vector<std::complex<double>> j_src;  // A/m^2 * s
  long steps = 0;
  double peak = 0.0;      // max |E_src| seen
  double residual = 0.0;  // last windowed |E_src| max over peak
  bool decayed = false;
  std::string termination;
};

enum class Field { ex, ey, ez, hx, hy, hz };

struct EngineOptions {
  CpmlParams cpml{};
  int threads = 1;
};

/// Yee update with Drude ADE, CPML shells, mirror/periodic ghost layers and a
/// soft current source on one E edge. A Simulation owns all of its state.
class Simulation {
 public:
  Simulation(Lattice lattice, MaterialMap materials, SourceWaveform source, std::vector<Frequency> energies,
             const KernelSet& kernels, EngineOptions options = {});

  /// Advances H by one step, then E (and J).
  void step();

  /// Steps until the source-edge field has decayed (see RunControl).
  RunResult run(const RunControl& control = {});

  long steps() const { return n_; }
  double time() const { return n_ * lattice_.dt(); }
  const Lattice& lattice() const { return lattice_; }
  const DftMonitor& monitor() const { return monitor_; }
  const KernelSet& kernels() const { return *kernels_; }

  /// E on the source edge after the last step.
  double source_field() const;
  const std::vector<double>& field(Field f) const;
  double max_abs_e() const;
  /// 1/2 sum (eps0 eps_inst E^2 + mu0 H^2) dV over all stored samples, J.
  double field_energy() const;

  /// Writes one plane of a field: uint32 little-endian n1, n2, then n1*n2
  /// float32 in row-major order. axis/index select the plane.
  void dump_slice(const std::string& path, Field f, int axis, int index) const;

 private:
  struct Coef {
    double ca, cb, cj, alpha, beta;
    bool drude;
  };
  struct Run {
    std::uint32_t begin, end;
    std::uint8_t material;
  };

  void update_h();
  void update_e(double j_source);
  void fill_ghosts(bool electric);
  void build_runs();
  void check_finite() const;

  Lattice lattice_;
  MaterialMap materials_;
  SourceWaveform source_;
  const KernelSet* kernels_;
  EngineOptions options_;
  DftMonitor monitor_;

  std::array<std::vector<double>, 3> e_, h_, j_;
  std::array<std::array<std::vector<double>, 3>, 3> psi_e_, psi_h_;  // [component][derivative axis]
  std::array<CpmlProfile, 3> cpml_;
  std::array<bool, 3> has_pml_{};
  std::vector<Coef> coef_;
  std::array<std::vector<Run>, 3> runs_;
  std::array<std::vector<std::uint32_t>, 3> run_offsets_;
  double ch_ = 0.0;
  bool any_drude_ = false;
  long n_ = 0;
};

}  // namespace ldoskit::fdtd
