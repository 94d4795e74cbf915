#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "ldoskit/cli/config.hpp"
#include "ldoskit/cli/csv.hpp"
#include "ldoskit/cli/drivers.hpp"
#include "ldoskit/cli/scenario.hpp"

using namespace ldoskit;
using namespace ldoskit::cli;
namespace fs = std::filesystem;

namespace {

std::string config_file(const std::string& name) {
  return read_text_file((fs::path(LDOSKIT_CONFIG_DIR) / name).string());
}

// Path of the ConfigError thrown by parse_config, or "" if none.
std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("ldoskit_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

SpectrumTable sample_table() {
  SpectrumTable t;
  t.scenario_hash = "0123456789abcdef";
  t.delta_nm = 2.0;
  t.rows = {{2.2, {-1.5e25, 3.25e19}, 1.25, 100, 1e-8, "ok"},
            {2.3, {-1.25e25, 4.5e19}, 1.5, 100, 1e-8, "ok"},
            {2.4, {1.0 / 3.0, 2.0 / 3.0}, 0.125, 100, 1e-8, "not_decayed"}};
  return t;
}

}  // namespace

TEST_CASE("a minimal vacuum config gets the documented defaults") {
  const auto c = parse_config(R"({"kind": "vacuum"})");
  CHECK(c.kind == ScenarioKind::vacuum);
  CHECK(c.grid.delta.nanometers == 2.0);
  CHECK(c.grid.courant == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(c.grid.pml_cells == 12);
  CHECK(c.grid.symmetry);
  CHECK(c.source.component == fdtd::Component::y);
  const auto e = c.frequencies.energies();
  REQUIRE(e.size() == 131);
  CHECK(e.front().energy_ev == doctest::Approx(2.2));
  CHECK(e.back().energy_ev == doctest::Approx(3.5));
  CHECK(e[1].energy_ev - e[0].energy_ev == doctest::Approx(0.01));
  CHECK(c.run.decay_threshold == 1e-7);
}

TEST_CASE("an emitter on the sphere surface is rejected") {
  CHECK(error_path(R"({"kind": "mnp", "source": {"z_over_a": 1.0}})") == "source.z_over_a");
  // 1.5 nm from the surface passes at delta 2 nm and fails at delta 4 nm.
  CHECK(error_path(R"({"kind": "mnp", "source": {"z_nm": 21.5}})") == "");
  CHECK(error_path(R"({"kind": "mnp", "source": {"z_nm": 21.5}, "grid": {"delta_nm": 4}})") == "source.z_nm");
  CHECK(error_path(R"({"kind": "mnp", "source": {"z_over_a": 1.2}, "sweep": {"z_over_a": [0.5, 1.04]}})") ==
        "sweep.z_over_a[1]");
}

TEST_CASE("schema errors name the offending field") {
  CHECK(error_path(R"({"kind": "vacuum", "grid": {"delta": 1}})") == "grid.delta");
  CHECK(error_path(R"({"kind": "vacuum", "grid": {"pml_cells": 2.5}})") == "grid.pml_cells");
  CHECK(error_path(R"({"kind": "vacuum", "grid": {"courant": 0.9}})") == "grid.courant");
  CHECK(error_path(R"({"kind": "plasma"})") == "kind");
  CHECK(error_path(R"({"name": "x"})") == "kind");
  CHECK(error_path(R"({"kind": "vacuum", "medium": "drude"})") == "medium");
  CHECK(error_path(R"({"kind": "homogeneous", "medium": {"type": "dielectric"}})") == "medium.eps");
  CHECK(error_path(R"({"kind": "homogeneous", "medium": {"type": "drude", "plasma": 9}})") == "medium.plasma");
  CHECK(error_path(R"({"kind": "mnp", "background": "drude"})") == "background");
  CHECK(error_path(R"({"kind": "vacuum", "frequencies": {"list_ev": [2.5, 2.4]}})") == "frequencies.list_ev[1]");
  CHECK(error_path(R"({"kind": "vacuum", "frequencies": {"list_ev": [2.5], "count": 3}})") == "frequencies.count");
  CHECK(error_path(R"({"kind": "vacuum", "run": {"kernels": "sse"}})") == "run.kernels");
  CHECK(error_path(R"({"kind": "cavity_mnp", "source": {"z_over_a": 1.5}})") == "source.z_over_a");
  CHECK(error_path(R"({"kind": "vacuum", "name": "a b"})") == "name");
  CHECK(error_path("{\"kind\": ") == "<root>");
  CHECK(error_path("[]") == "<root>");
}

TEST_CASE("print then parse returns the same config") {
  ScenarioConfig c;
  c.name = "everything";
  c.kind = ScenarioKind::cavity_mnp;
  c.medium = Medium::drude({5.0, {9.0}, {0.1}});
  c.background = Medium::dielectric(1.77);
  c.cavity_medium = Medium::dielectric(2.25);
  c.radius = {25.0};
  c.source.z_nm = 3.0;
  c.source.component = fdtd::Component::z;
  c.source.edge_level = 1e-3;
  c.grid = {{1.0}, 0.25, 8, 15.0, 40, false};
  c.frequencies.list_ev = {2.0, 2.5, 3.0};
  c.run = {1e-6, 12345, "scalar"};
  c.sweep.delta_nm = {1.0, 2.0};
  c.output = "out/everything.csv";
  c.validate();
  const auto text = print_config(c);
  CHECK(parse_config(text) == c);
  CHECK(print_config(parse_config(text)) == text);

  for (const char* f : {"vacuum.json", "fig1e.json", "fig2a.json", "fig2b.json", "fig2c.json", "fig3.json"}) {
    CAPTURE(f);
    for (const auto& s : parse_bundle(config_file(f))) CHECK(parse_config(print_config(s)) == s);
  }
}

TEST_CASE("shipped figure configs carry the model parameters") {
  const auto check_silver = [](const Medium& m) {
    REQUIRE(m.is_drude());
    CHECK(m.drude_model().eps_inf == 6.0);
    CHECK(m.drude_model().plasma_energy.energy_ev == 7.89);
    CHECK(m.drude_model().damping_energy.energy_ev == 0.051);
  };
  const auto sweep = parse_config(config_file("fig1e.json"));
  check_silver(sweep.medium);
  CHECK(sweep.radius.nanometers == 20.0);
  CHECK(sweep.sweep.delta_nm == std::vector<double>{1.0, 2.0});
  CHECK(sweep.sweep.z_over_a.front() == 0.05);
  CHECK(sweep.sweep.z_over_a.back() == 1.95);
  CHECK(parse_config(config_file("fig2a.json")).source_z_nm() == 0.0);
  CHECK(parse_config(config_file("fig2b.json")).source_z_nm() == doctest::Approx(18.0));
  CHECK(parse_config(config_file("fig2c.json")).source_z_nm() == doctest::Approx(24.0));

  const auto bundle = parse_bundle(config_file("fig3.json"));
  REQUIRE(bundle.size() == 4);
  CHECK(bundle[0].kind == ScenarioKind::homogeneous);
  CHECK(bundle[1].kind == ScenarioKind::mnp);
  CHECK(bundle[2].kind == ScenarioKind::cavity_homog);
  CHECK(bundle[3].kind == ScenarioKind::cavity_mnp);
  for (const auto& c : bundle) {
    check_silver(c.medium);
    CHECK(c.grid.delta.nanometers == 1.0);
  }
}

TEST_CASE("bundles") {
  CHECK(parse_bundle(R"({"kind": "vacuum"})").size() == 1);
  CHECK(parse_bundle(R"({"scenarios": [{"kind": "vacuum", "name": "a"}, {"kind": "vacuum", "name": "b"}]})").size() ==
        2);
  try {
    parse_bundle(R"({"scenarios": [{"kind": "vacuum", "name": "a"}, {"kind": "vacuum", "grid": {"x": 1}}]})");
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "scenarios[1].grid.x");
  }
  CHECK_THROWS_AS(parse_bundle(R"({"scenarios": [{"kind": "vacuum"}, {"kind": "vacuum"}]})"), ConfigError);
  CHECK_THROWS_AS(parse_bundle(R"({"scenarios": []})"), ConfigError);
}

TEST_CASE("scenario hash ignores the output path only") {
  auto a = parse_config(R"({"kind": "mnp", "source": {"z_over_a": 1.2}})");
  auto b = a;
  b.output = "elsewhere.csv";
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(scenario_hash(a).size() == 16);
  b.grid.delta = {1.0};
  CHECK(scenario_hash(a) != scenario_hash(b));
  b = a;
  b.source.z_over_a = 1.25;
  CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("CSV text is fixed by the table and parses back") {
  const auto t = sample_table();
  const auto text = format_csv(t);
  CHECK(text == format_csv(sample_table()));
  CHECK(text.rfind("# ldos-kit v0.1.0\nenergy_ev,re_G,im_G,purcell,scenario_hash,delta_nm,steps,residual,flag\n", 0) ==
        0);
  CHECK(text.find("2.20000000e+00,-1.50000000e+25,3.25000000e+19,1.25000000e+00,0123456789abcdef,2.00000000e+00,100,"
                  "1.00000000e-08,ok\n") != std::string::npos);
  const auto back = parse_csv(text);
  CHECK(back.scenario_hash == t.scenario_hash);
  CHECK(back.delta_nm == 2.0);
  REQUIRE(back.rows.size() == 3);
  CHECK(back.rows[2].flag == "not_decayed");
  // 9 significant digits
  CHECK(back.rows[2].g.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(back.rows[2].g.real() != 1.0 / 3.0);
  CHECK(format_csv(back) == text);
  CHECK(t.peak().energy_ev == 2.3);
}

TEST_CASE("malformed CSV is rejected") {
  const auto text = format_csv(sample_table());
  auto bad_version = text;
  bad_version.replace(0, 17, "# ldos-kit v9.0.0");
  CHECK_THROWS_AS(parse_csv(bad_version), CsvError);
  CHECK_THROWS_AS(parse_csv("energy_ev,purcell\n"), CsvError);
  auto mixed = text;
  mixed.replace(mixed.rfind("0123456789abcdef"), 16, "fedcba9876543210");
  CHECK_THROWS_AS(parse_csv(mixed), CsvError);
  auto short_row = text.substr(0, text.rfind(",not_decayed"));
  CHECK_THROWS_AS(parse_csv(short_row + "\n"), CsvError);
}

TEST_CASE("compare") {
  const auto t = sample_table();
  const auto self = compare(t, t, 1e-12);
  CHECK(self.points == 3);
  CHECK(self.max_rel == 0.0);
  CHECK(self.median_rel == 0.0);
  CHECK(self.pass);

  auto u = t;
  u.rows[0].purcell *= 1.02;
  u.rows[1].purcell *= 0.9;
  const auto r = compare(u, t, 0.05);
  CHECK(r.max_rel == doctest::Approx(0.1));
  CHECK(r.worst_energy_ev == 2.3);
  CHECK(r.median_rel == doctest::Approx(0.02));
  CHECK_FALSE(r.pass);
  CHECK(compare(u, t, 0.1 + 1e-12).pass);

  auto other = t;
  other.rows[1].energy_ev = 2.31;
  CHECK_THROWS_AS(compare(other, t, 0.05), CsvError);
  other = t;
  other.rows.pop_back();
  CHECK_THROWS_AS(compare(other, t, 0.05), CsvError);
}

TEST_CASE("thread count resolution") {
  ::unsetenv("LDOSKIT_THREADS");
  CHECK(resolve_threads(std::nullopt) == 1);
  CHECK(resolve_threads(3) == 3);
  ::setenv("LDOSKIT_THREADS", "4", 1);
  CHECK(resolve_threads(std::nullopt) == 4);
  CHECK(resolve_threads(2) == 2);
  ::setenv("LDOSKIT_THREADS", "four", 1);
  CHECK_THROWS_AS(resolve_threads(std::nullopt), std::invalid_argument);
  ::unsetenv("LDOSKIT_THREADS");
  CHECK_THROWS_AS(resolve_threads(0), std::invalid_argument);
}

TEST_CASE("sphere domains cover the same physical box on both grids") {
  for (double z : {0.0, 0.5, 1.2, 2.0}) {
    auto c = parse_config(R"({"kind": "mnp"})");
    c.source.z_over_a = z;
    double extent[2][2];
    int k = 0;
    for (double d : {1.0, 2.0}) {
      c.grid.delta = {d};
      const auto s = make_setup(c);
      const auto& n = s.grid.interior_cells;
      CHECK(n[0] == n[1]);
      CHECK(n[0] * d == doctest::Approx(2 * (20.0 + c.grid.padding_nm)));
      // Interior box along z, relative to the sphere centre.
      const int h = (n[2] + 1) / 2, shift = s.grid.shift_cells[2];
      extent[k][0] = 20.0 * z - (h - shift) * d;
      extent[k][1] = 20.0 * z + (n[2] - h + shift) * d;
      ++k;
      CHECK(extent[k - 1][0] <= -20.0 - c.grid.padding_nm + 1e-9);
      CHECK(extent[k - 1][1] >= std::max(20.0, 20.0 * z) + c.grid.padding_nm - 1e-9);
    }
    CAPTURE(z);
    CHECK(extent[0][0] == doctest::Approx(extent[1][0]));
    CHECK(extent[0][1] == doctest::Approx(extent[1][1]));
  }
}

TEST_CASE("single-energy runs widen the pulse band") {
  auto c = parse_config(R"({"kind": "vacuum", "frequencies": {"list_ev": [2.9]}})");
  const auto s = make_setup(c);
  CHECK(s.energies.size() == 1);
  CHECK(s.source.omega_c > 0.0);
}

TEST_CASE("analytic spectra") {
  const auto vac = run_analytic(parse_config(R"({"kind": "vacuum", "frequencies": {"count": 5}})"));
  REQUIRE(vac.rows.size() == 5);
  for (const auto& r : vac.rows) {
    CHECK(r.flag == "analytic");
    CHECK(r.purcell == doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK(vac.delta_nm == 2.0);

  // Outside the sphere the reference is the point-emitter series, independent of delta.
  auto out = parse_config(R"({"kind": "mnp", "source": {"z_over_a": 1.5}, "frequencies": {"count": 3}})");
  const auto a = run_analytic(out);
  out.grid.delta = {1.0};
  const auto b = run_analytic(out);
  CHECK(a.delta_nm == 0.0);
  CHECK(compare(a, b, 1e-15).max_rel == 0.0);
  CHECK(a.rows[0].purcell > 1.0);

  CHECK_THROWS_AS(run_analytic(parse_config(R"({"kind": "cavity_mnp", "source": {"z_nm": 5}})")),
                  std::invalid_argument);
}

TEST_CASE("sweep variants") {
  auto base = parse_config(config_file("fig1e.json"));
  const auto v = height_variants(base);
  CHECK(v.size() == 2 * base.sweep.z_over_a.size());
  CHECK(v.front().name == "fig1e_z0.05_d1");
  CHECK(v.back().name == "fig1e_z1.95_d2");
  CHECK(v.back().grid.delta.nanometers == 2.0);
  CHECK(v.back().sweep.z_over_a.empty());

  const auto g = grid_variants(parse_config(config_file("fig2c.json")));
  REQUIRE(g.size() == 2);
  CHECK(g[0].name == "fig2c_d1");
  CHECK(g[1].grid.delta.nanometers == 2.0);
  CHECK_THROWS_AS(height_variants(parse_config(R"({"kind": "vacuum"})")), std::invalid_argument);
}

TEST_CASE("jobs write their CSVs and report the first failure") {
  const auto dir = scratch("jobs");
  std::vector<Job> jobs;
  for (int i = 0; i < 4; ++i) {
    auto c = parse_config(R"({"kind": "mnp", "source": {"z_over_a": 1.5}, "frequencies": {"count": 4}})");
    c.name = "job" + std::to_string(i);
    c.radius = {10.0 + i};
    jobs.push_back({c, true, (dir / (c.name + ".csv")).string()});
  }
  const auto res = run_jobs(jobs, 3);
  REQUIRE(res.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(read_csv(jobs[i].path).scenario_hash == scenario_hash(jobs[i].config));
    CHECK(format_csv(res[i].table) == read_text_file(jobs[i].path));
  }
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".csv");

  auto bad = jobs;
  bad[2].config.kind = ScenarioKind::cavity_mnp;
  bad[2].config.source.z_over_a = 0.5;
  CHECK_THROWS_AS(run_jobs(bad, 2), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("FDTD output is byte-identical across runs") {
  const auto c = parse_config(
      R"({"kind": "vacuum", "grid": {"min_interior": 16, "pml_cells": 8}, "frequencies": {"count": 4}})");
  const auto a = format_csv(run_fdtd(c));
  const auto b = format_csv(run_fdtd(c));
  CHECK(a == b);
  const auto t = parse_csv(a);
  CHECK(t.rows.front().flag == "ok");
  CHECK(t.rows.front().steps > 0);
}
