#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldoskit/fdtd/grid.hpp"
#include "ldoskit/materials.hpp"
#include "ldoskit/units.hpp"

namespace ldoskit::cli {

/// Schema violation; what() starts with the offending field path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class ScenarioKind { vacuum, homogeneous, mnp, cavity_homog, cavity_mnp };

std::string to_string(ScenarioKind k);

/// Emitter placement on the z axis through the sphere centre. At most one of
/// z_nm and z_over_a is set; neither means the centre.
struct SourceConfig {
  std::optional<double> z_nm;
  std::optional<double> z_over_a;
  fdtd::Component component = fdtd::Component::y;
  double edge_level = 1e-2;  // pulse spectrum at the band edges, relative to its peak

  friend bool operator==(const SourceConfig&, const SourceConfig&) = default;
};

struct GridConfig {
  Length delta{2.0};
  double courant = 0.5 / 1.7320508075688772;
  int pml_cells = 12;
  double padding_nm = 20.0;  // air around the sphere's bounding box
  int min_interior = 60;     // interior cells per axis for unbounded media
  bool symmetry = true;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

/// Either an explicit list or start/stop/count.
struct FrequencyConfig {
  std::vector<double> list_ev;
  double start_ev = 2.2;
  double stop_ev = 3.5;
  int count = 131;

  std::vector<Frequency> energies() const;
  friend bool operator==(const FrequencyConfig&, const FrequencyConfig&) = default;
};

struct RunConfig {
  double decay_threshold = 1e-7;
  long max_steps = 4'000'000;
  std::string kernels = "auto";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Values iterated by sweep-height and sweep-grid.
struct SweepConfig {
  std::vector<double> z_over_a;
  std::vector<double> delta_nm;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::vacuum;
  Medium medium = Medium::drude(DrudeModel::silver());  // host (homogeneous kinds) or sphere
  Medium background = Medium::vacuum();                  // around the sphere
  Length radius{20.0};
  Medium cavity_medium = Medium::vacuum();
  SourceConfig source;
  GridConfig grid;
  FrequencyConfig frequencies;
  RunConfig run;
  SweepConfig sweep;
  std::string output;

  bool has_sphere() const { return kind == ScenarioKind::mnp || kind == ScenarioKind::cavity_mnp; }
  bool has_cavity() const { return kind == ScenarioKind::cavity_homog || kind == ScenarioKind::cavity_mnp; }

  /// Emitter height above the sphere centre, nm (0 without a sphere).
  double source_z_nm() const;

  /// Checks the cross-field invariants; throws ConfigError.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses one scenario object, filling defaults and validating.
ScenarioConfig parse_config(const std::string& json_text);

/// Accepts a single scenario or {"scenarios": [...]}.
std::vector<ScenarioConfig> parse_bundle(const std::string& json_text);

/// Canonical JSON; parse_config(print_config(c)) == c.
std::string print_config(const ScenarioConfig& c);

/// FNV-1a of the canonical JSON with the output path removed, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& c);

std::string read_text_file(const std::string& path);

}  // namespace ldoskit::cli
