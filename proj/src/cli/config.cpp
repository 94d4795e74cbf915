#include "ldoskit/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ldoskit/fdtd/kernels.hpp"

namespace ldoskit::cli {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Object reader that records which keys were consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }
  std::string path(const std::string& k) const { return join(path_, k); }

  const json& get(const std::string& k) {
    used_.insert(k);
    return j_.at(k);
  }

  double number(const std::string& k, double fallback) {
    if (!has(k)) return fallback;
    const json& v = get(k);
    if (!v.is_number()) throw ConfigError(path(k), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path(k), "must be finite");
    return x;
  }

  long integer(const std::string& k, long fallback) {
    if (!has(k)) return fallback;
    const json& v = get(k);
    if (!v.is_number_integer()) throw ConfigError(path(k), "expected an integer");
    return v.get<long>();
  }

  bool boolean(const std::string& k, bool fallback) {
    if (!has(k)) return fallback;
    const json& v = get(k);
    if (!v.is_boolean()) throw ConfigError(path(k), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& k, const std::string& fallback) {
    if (!has(k)) return fallback;
    const json& v = get(k);
    if (!v.is_string()) throw ConfigError(path(k), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& k) {
    if (!has(k)) return {};
    const json& v = get(k);
    if (!v.is_array()) throw ConfigError(path(k), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(path(k) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  void reject(const std::string& k, const std::string& why) {
    if (has(k)) throw ConfigError(path(k), why);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(path(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

ScenarioKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "vacuum") return ScenarioKind::vacuum;
  if (s == "homogeneous") return ScenarioKind::homogeneous;
  if (s == "mnp") return ScenarioKind::mnp;
  if (s == "cavity_homog") return ScenarioKind::cavity_homog;
  if (s == "cavity_mnp") return ScenarioKind::cavity_mnp;
  throw ConfigError(path, "unknown kind '" + s + "' (vacuum|homogeneous|mnp|cavity_homog|cavity_mnp)");
}

fdtd::Component parse_component(const std::string& s, const std::string& path) {
  if (s == "x") return fdtd::Component::x;
  if (s == "y") return fdtd::Component::y;
  if (s == "z") return fdtd::Component::z;
  throw ConfigError(path, "expected x, y or z");
}

const char* component_name(fdtd::Component c) {
  switch (c) {
    case fdtd::Component::x: return "x";
    case fdtd::Component::y: return "y";
    default: return "z";
  }
}

Medium parse_medium(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "vacuum") return Medium::vacuum();
    if (s == "drude") return Medium::drude(DrudeModel::silver());
    throw ConfigError(path, "unknown medium '" + s + "' (vacuum|drude or an object)");
  }
  Reader r(j, path);
  if (!r.has("type")) throw ConfigError(r.path("type"), "missing");
  const std::string type = r.string("type", "");
  Medium m;
  if (type == "vacuum") {
    m = Medium::vacuum();
  } else if (type == "dielectric") {
    if (!r.has("eps")) throw ConfigError(r.path("eps"), "missing");
    const double eps = r.number("eps", 1.0);
    if (!(eps > 0.0)) throw ConfigError(r.path("eps"), "must be positive");
    m = Medium::dielectric(eps);
  } else if (type == "drude") {
    DrudeModel d;
    d.eps_inf = r.number("eps_inf", d.eps_inf);
    d.plasma_energy = {r.number("plasma_ev", d.plasma_energy.energy_ev)};
    d.damping_energy = {r.number("damping_ev", d.damping_energy.energy_ev)};
    try {
      d.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
    m = Medium::drude(d);
  } else {
    throw ConfigError(r.path("type"), "unknown medium type '" + type + "' (vacuum|dielectric|drude)");
  }
  r.finish();
  return m;
}

ojson print_medium(const Medium& m) {
  ojson o;
  if (m.is_drude()) {
    const auto& d = m.drude_model();
    o["type"] = "drude";
    o["eps_inf"] = d.eps_inf;
    o["plasma_ev"] = d.plasma_energy.energy_ev;
    o["damping_ev"] = d.damping_energy.energy_ev;
  } else if (const auto* e = std::get_if<DielectricMedium>(&m.kind())) {
    o["type"] = "dielectric";
    o["eps"] = e->eps_real;
  } else {
    o["type"] = "vacuum";
  }
  return o;
}

bool uses_medium(ScenarioKind k) { return k != ScenarioKind::vacuum; }
bool uses_sphere(ScenarioKind k) { return k == ScenarioKind::mnp || k == ScenarioKind::cavity_mnp; }
bool uses_cavity(ScenarioKind k) { return k == ScenarioKind::cavity_homog || k == ScenarioKind::cavity_mnp; }

ScenarioConfig from_json(const json& j) {
  Reader r(j, "");
  ScenarioConfig c;
  c.name = r.string("name", c.name);
  if (!r.has("kind")) throw ConfigError("kind", "missing");
  c.kind = parse_kind(r.string("kind", ""), "kind");
  const std::string kind = to_string(c.kind);

  if (uses_medium(c.kind)) {
    if (r.has("medium")) c.medium = parse_medium(r.get("medium"), "medium");
  } else {
    r.reject("medium", "not used by kind " + kind);
  }
  if (uses_sphere(c.kind)) {
    if (r.has("background")) c.background = parse_medium(r.get("background"), "background");
    c.radius = {r.number("radius_nm", c.radius.nanometers)};
  } else {
    r.reject("background", "not used by kind " + kind);
    r.reject("radius_nm", "not used by kind " + kind);
  }
  if (uses_cavity(c.kind)) {
    if (r.has("cavity_medium")) c.cavity_medium = parse_medium(r.get("cavity_medium"), "cavity_medium");
  } else {
    r.reject("cavity_medium", "not used by kind " + kind);
  }

  if (r.has("source")) {
    Reader s(r.get("source"), "source");
    if (uses_sphere(c.kind)) {
      if (s.has("z_nm") && s.has("z_over_a")) throw ConfigError("source", "give either z_nm or z_over_a, not both");
      if (s.has("z_nm")) c.source.z_nm = s.number("z_nm", 0.0);
      if (s.has("z_over_a")) c.source.z_over_a = s.number("z_over_a", 0.0);
    } else {
      s.reject("z_nm", "no sphere in kind " + kind);
      s.reject("z_over_a", "no sphere in kind " + kind);
    }
    c.source.component = parse_component(s.string("component", "y"), "source.component");
    c.source.edge_level = s.number("edge_level", c.source.edge_level);
    s.finish();
  }

  if (r.has("grid")) {
    Reader g(r.get("grid"), "grid");
    c.grid.delta = {g.number("delta_nm", c.grid.delta.nanometers)};
    c.grid.courant = g.number("courant", c.grid.courant);
    c.grid.pml_cells = static_cast<int>(g.integer("pml_cells", c.grid.pml_cells));
    c.grid.padding_nm = g.number("padding_nm", c.grid.padding_nm);
    c.grid.min_interior = static_cast<int>(g.integer("min_interior", c.grid.min_interior));
    c.grid.symmetry = g.boolean("symmetry", c.grid.symmetry);
    g.finish();
  }

  if (r.has("frequencies")) {
    Reader f(r.get("frequencies"), "frequencies");
    if (f.has("list_ev")) {
      for (const char* k : {"start_ev", "stop_ev", "count"}) f.reject(k, "not allowed together with list_ev");
      c.frequencies.list_ev = f.numbers("list_ev");
    } else {
      c.frequencies.start_ev = f.number("start_ev", c.frequencies.start_ev);
      c.frequencies.stop_ev = f.number("stop_ev", c.frequencies.stop_ev);
      c.frequencies.count = static_cast<int>(f.integer("count", c.frequencies.count));
    }
    f.finish();
  }

  if (r.has("run")) {
    Reader u(r.get("run"), "run");
    c.run.decay_threshold = u.number("decay_threshold", c.run.decay_threshold);
    c.run.max_steps = u.integer("max_steps", c.run.max_steps);
    c.run.kernels = u.string("kernels", c.run.kernels);
    u.finish();
  }

  if (r.has("sweep")) {
    Reader w(r.get("sweep"), "sweep");
    if (uses_sphere(c.kind)) {
      c.sweep.z_over_a = w.numbers("z_over_a");
    } else {
      w.reject("z_over_a", "no sphere in kind " + kind);
    }
    c.sweep.delta_nm = w.numbers("delta_nm");
    w.finish();
  }

  c.output = r.string("output", "");
  r.finish();
  c.validate();
  return c;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::vacuum: return "vacuum";
    case ScenarioKind::homogeneous: return "homogeneous";
    case ScenarioKind::mnp: return "mnp";
    case ScenarioKind::cavity_homog: return "cavity_homog";
    case ScenarioKind::cavity_mnp: return "cavity_mnp";
  }
  return "?";
}

std::vector<Frequency> FrequencyConfig::energies() const {
  std::vector<Frequency> out;
  if (!list_ev.empty()) {
    for (double e : list_ev) out.push_back({e});
    return out;
  }
  if (count == 1) return {{start_ev}};
  for (int i = 0; i < count; ++i) {
    out.push_back({start_ev + (stop_ev - start_ev) * static_cast<double>(i) / (count - 1)});
  }
  return out;
}

double ScenarioConfig::source_z_nm() const {
  if (!has_sphere()) return 0.0;
  if (source.z_nm) return *source.z_nm;
  if (source.z_over_a) return *source.z_over_a * radius.nanometers;
  return 0.0;
}

void ScenarioConfig::validate() const {
  if (name.empty()) throw ConfigError("name", "must not be empty");
  for (char ch : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    if (!ok) throw ConfigError("name", "only letters, digits, '_', '-' and '.' are allowed");
  }

  const double d = grid.delta.nanometers;
  if (!(d > 0.0)) throw ConfigError("grid.delta_nm", "must be positive");
  if (!(grid.courant > 0.0) || grid.courant > 0.99 / std::sqrt(3.0)) {
    throw ConfigError("grid.courant", "must lie in (0, 0.99/sqrt(3)]");
  }
  if (grid.pml_cells < 1) throw ConfigError("grid.pml_cells", "must be >= 1");
  if (grid.padding_nm < 0.0) throw ConfigError("grid.padding_nm", "must be >= 0");
  if (grid.min_interior < 2) throw ConfigError("grid.min_interior", "must be >= 2");

  if (has_sphere()) {
    if (background.is_drude()) throw ConfigError("background", "must be lossless");
    if (!(radius.nanometers > 0.0)) throw ConfigError("radius_nm", "must be positive");
  }
  if (has_cavity() && cavity_medium.is_drude()) throw ConfigError("cavity_medium", "must be lossless");

  if (!(source.edge_level >= 1e-4 && source.edge_level < 1.0)) {
    throw ConfigError("source.edge_level", "must lie in [1e-4, 1)");
  }
  auto check_height = [&](double z, double delta, const std::string& path) {
    if (!(z >= 0.0)) throw ConfigError(path, "height above the sphere centre must be >= 0");
    const double a = radius.nanometers;
    if (!(std::abs(z - a) > 0.5 * delta)) {
      throw ConfigError(path, "emitter within half a cell of the sphere surface (|z - a| must exceed delta/2)");
    }
    if (kind == ScenarioKind::cavity_mnp && z > a) throw ConfigError(path, "the cavity must lie inside the sphere");
  };
  const std::string zpath = source.z_over_a ? "source.z_over_a" : "source.z_nm";
  if (has_sphere()) check_height(source_z_nm(), d, zpath);

  const auto& f = frequencies;
  if (!f.list_ev.empty()) {
    for (std::size_t i = 0; i < f.list_ev.size(); ++i) {
      const std::string p = "frequencies.list_ev[" + std::to_string(i) + "]";
      if (!(f.list_ev[i] > 0.0)) throw ConfigError(p, "must be positive");
      if (i > 0 && !(f.list_ev[i] > f.list_ev[i - 1])) throw ConfigError(p, "must be strictly ascending");
    }
  } else {
    if (!(f.start_ev > 0.0)) throw ConfigError("frequencies.start_ev", "must be positive");
    if (f.count < 1) throw ConfigError("frequencies.count", "must be >= 1");
    if (f.count == 1 ? f.stop_ev != f.start_ev : !(f.stop_ev > f.start_ev)) {
      throw ConfigError("frequencies.stop_ev", "must exceed start_ev (or equal it when count is 1)");
    }
  }

  if (!(run.decay_threshold > 0.0 && run.decay_threshold < 1.0)) {
    throw ConfigError("run.decay_threshold", "must lie in (0, 1)");
  }
  if (run.max_steps < 1) throw ConfigError("run.max_steps", "must be positive");
  try {
    fdtd::parse_kernel_choice(run.kernels);
  } catch (const std::invalid_argument&) {
    throw ConfigError("run.kernels", "expected auto, scalar or avx2");
  }

  for (std::size_t i = 0; i < sweep.delta_nm.size(); ++i) {
    if (!(sweep.delta_nm[i] > 0.0)) throw ConfigError("sweep.delta_nm[" + std::to_string(i) + "]", "must be positive");
  }
  std::vector<double> deltas = sweep.delta_nm;
  if (deltas.empty()) deltas.push_back(d);
  for (std::size_t i = 0; i < sweep.z_over_a.size(); ++i) {
    for (double dd : deltas) check_height(sweep.z_over_a[i] * radius.nanometers, dd, "sweep.z_over_a[" + std::to_string(i) + "]");
  }
}

ScenarioConfig parse_config(const std::string& json_text) { return from_json(parse_json(json_text)); }

std::vector<ScenarioConfig> parse_bundle(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("scenarios")) return {from_json(j)};
  if (j.size() != 1) throw ConfigError("<root>", "a bundle holds only the 'scenarios' array");
  const json& list = j.at("scenarios");
  if (!list.is_array() || list.empty()) throw ConfigError("scenarios", "expected a non-empty array");
  std::vector<ScenarioConfig> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = "scenarios[" + std::to_string(i) + "]";
    try {
      out.push_back(from_json(list[i]));
    } catch (const ConfigError& e) {
      throw ConfigError(p + "." + e.path(), std::string(e.what()).substr(e.path().size() + 2));
    }
    if (!names.insert(out.back().name).second) throw ConfigError(p + ".name", "duplicate scenario name");
  }
  return out;
}

std::string print_config(const ScenarioConfig& c) {
  ojson o;
  o["name"] = c.name;
  o["kind"] = to_string(c.kind);
  if (uses_medium(c.kind)) o["medium"] = print_medium(c.medium);
  if (uses_sphere(c.kind)) {
    o["background"] = print_medium(c.background);
    o["radius_nm"] = c.radius.nanometers;
  }
  if (uses_cavity(c.kind)) o["cavity_medium"] = print_medium(c.cavity_medium);

  ojson s;
  if (c.source.z_nm) s["z_nm"] = *c.source.z_nm;
  if (c.source.z_over_a) s["z_over_a"] = *c.source.z_over_a;
  s["component"] = component_name(c.source.component);
  s["edge_level"] = c.source.edge_level;
  o["source"] = s;

  ojson g;
  g["delta_nm"] = c.grid.delta.nanometers;
  g["courant"] = c.grid.courant;
  g["pml_cells"] = c.grid.pml_cells;
  g["padding_nm"] = c.grid.padding_nm;
  g["min_interior"] = c.grid.min_interior;
  g["symmetry"] = c.grid.symmetry;
  o["grid"] = g;

  ojson f;
  if (!c.frequencies.list_ev.empty()) {
    f["list_ev"] = c.frequencies.list_ev;
  } else {
    f["start_ev"] = c.frequencies.start_ev;
    f["stop_ev"] = c.frequencies.stop_ev;
    f["count"] = c.frequencies.count;
  }
  o["frequencies"] = f;

  ojson u;
  u["decay_threshold"] = c.run.decay_threshold;
  u["max_steps"] = c.run.max_steps;
  u["kernels"] = c.run.kernels;
  o["run"] = u;

  if (!c.sweep.z_over_a.empty() || !c.sweep.delta_nm.empty()) {
    ojson w;
    if (!c.sweep.z_over_a.empty()) w["z_over_a"] = c.sweep.z_over_a;
    if (!c.sweep.delta_nm.empty()) w["delta_nm"] = c.sweep.delta_nm;
    o["sweep"] = w;
  }
  if (!c.output.empty()) o["output"] = c.output;
  return o.dump(2) + "\n";
}

std::string scenario_hash(const ScenarioConfig& c) {
  ScenarioConfig k = c;
  k.output.clear();
  const std::string text = print_config(k);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace ldoskit::cli
