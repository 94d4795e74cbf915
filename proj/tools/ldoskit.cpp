// ldoskit: command-line front end.
//
// Exit codes: 0 success or pass, 1 error, 2 comparison or acceptance failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldoskit/cli/acceptance.hpp"
#include "ldoskit/cli/config.hpp"
#include "ldoskit/cli/csv.hpp"
#include "ldoskit/cli/drivers.hpp"

namespace fs = std::filesystem;
using namespace ldoskit::cli;

namespace {

void log_line(const std::string& s) { std::cerr << s << std::endl; }

std::string csv_name(const ScenarioConfig& c, bool analytic) {
  return c.name + (analytic ? "-analytic" : "") + ".csv";
}

// A single scenario goes to --out, else its own output field, else <name>.csv.
// Bundles and sweeps always treat --out as a directory.
std::vector<Job> plan(const std::vector<ScenarioConfig>& scenarios, bool analytic, const std::string& out,
                      bool single_file) {
  std::vector<Job> jobs;
  for (const auto& c : scenarios) {
    std::string path;
    if (single_file && scenarios.size() == 1) {
      path = !out.empty() ? out : !c.output.empty() ? c.output : csv_name(c, analytic);
    } else {
      path = (fs::path(out.empty() ? "." : out) / csv_name(c, analytic)).string();
    }
    jobs.push_back({c, analytic, path});
  }
  return jobs;
}

void print_report(const std::string& label, const CompareReport& r) {
  std::printf("%s: %zu points, max %.4e at %.4f eV, median %.4e, tol %.4g: %s\n", label.c_str(), r.points, r.max_rel,
              r.worst_energy_ev, r.median_rel, r.tol, r.pass ? "pass" : "fail");
}

int report_runs(const std::vector<Job>& jobs, const std::vector<JobResult>& results) {
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& t = results[i].table;
    const auto& pk = t.peak();
    std::printf("%s: peak purcell %.6e at %.4f eV, %.1f s -> %s\n", jobs[i].config.name.c_str(), pk.purcell,
                pk.energy_ev, results[i].seconds, jobs[i].path.c_str());
    for (const auto& row : t.rows) {
      if (row.flag == "not_decayed") {
        std::printf("%s: warning: fields did not decay (residual %.2e after %ld steps)\n",
                    jobs[i].config.name.c_str(), row.residual, row.steps);
        break;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized Green function, LDOS and Purcell factor calculator"};
  app.set_version_flag("--version", std::string("ldos-kit ") + kVersion);
  app.require_subcommand(1);

  std::string config, out;
  std::optional<int> threads;
  double tol = 0.05;
  std::vector<std::string> files;
  bool full = false, fresh = false;
  std::vector<int> only;

  auto add_common = [&](CLI::App* s, bool needs_config) {
    auto* opt = s->add_option("--config", config, "Scenario JSON (single scenario or {\"scenarios\": [...]})");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    s->add_option("--threads", threads, "Worker threads (default: LDOSKIT_THREADS, else 1)")
        ->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "FDTD spectrum for each scenario");
  add_common(run, true);
  run->add_option("--out", out, "CSV path (single scenario) or directory (bundle)");

  auto* analytic = app.add_subcommand("analytic", "Reference spectrum for each scenario");
  add_common(analytic, true);
  analytic->add_option("--out", out, "CSV path (single scenario) or directory (bundle)");

  auto* sweep_h = app.add_subcommand("sweep-height", "FDTD runs over sweep.z_over_a and the grid sizes");
  add_common(sweep_h, true);
  sweep_h->add_option("--out", out, "Output directory")->required();

  auto* sweep_g = app.add_subcommand("sweep-grid", "FDTD runs over sweep.delta_nm, compared against the finest");
  add_common(sweep_g, true);
  sweep_g->add_option("--out", out, "Output directory")->required();
  sweep_g->add_option("--tol", tol, "Relative tolerance for the grid comparison")->check(CLI::PositiveNumber);

  auto* cmp = app.add_subcommand("compare", "Relative Purcell deviation of two spectra");
  cmp->add_option("files", files, "Spectrum CSV, then the reference CSV")->required()->expected(2)->check(CLI::ExistingFile);
  cmp->add_option("--tol", tol, "Relative tolerance")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Acceptance suite (reduced resolution unless --full)");
  validate->add_option("--threads", threads, "Worker threads (default: LDOSKIT_THREADS, else 1)")
      ->check(CLI::PositiveNumber);
  validate->add_option("--out", out, "Work directory for cached spectra")->default_str("acceptance-work");
  validate->add_flag("--full", full, "Production grids (1 and 2 nm) and 131 energies");
  validate->add_flag("--fresh", fresh, "Ignore cached spectra");
  validate->add_option("--only", only, "Criterion ids to run")->delimiter(',')->check(CLI::Range(1, 8));

  auto* print = app.add_subcommand("print-config", "Canonical form of each scenario with its hash");
  add_common(print, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (cmp->parsed()) {
      const auto r = compare(read_csv(files[0]), read_csv(files[1]), tol);
      print_report(files[0] + " vs " + files[1], r);
      return r.pass ? 0 : 2;
    }

    const int n_threads = resolve_threads(threads);

    if (validate->parsed()) {
      AcceptanceOptions o;
      o.work_dir = out.empty() ? "acceptance-work" : out;
      o.reduced = !full;
      o.threads = n_threads;
      o.reuse = !fresh;
      o.only = only;
      o.log = log_line;
      const auto results = run_acceptance(o);
      bool ok = true;
      for (const auto& r : results) {
        std::printf("%s\n", format_criterion(r).c_str());
        ok = ok && r.pass;
      }
      return ok ? 0 : 2;
    }

    const auto scenarios = parse_bundle(read_text_file(config));

    if (print->parsed()) {
      for (const auto& c : scenarios) std::printf("# %s\n%s", scenario_hash(c).c_str(), print_config(c).c_str());
      return 0;
    }

    if (run->parsed() || analytic->parsed()) {
      const auto jobs = plan(scenarios, analytic->parsed(), out, true);
      return report_runs(jobs, run_jobs(jobs, n_threads, log_line));
    }

    if (sweep_h->parsed()) {
      std::vector<ScenarioConfig> variants;
      for (const auto& c : scenarios) {
        for (auto& v : height_variants(c)) variants.push_back(std::move(v));
      }
      auto jobs = plan(variants, false, out, false);
      // Point-emitter reference for heights outside the sphere, once per height.
      std::vector<ScenarioConfig> refs;
      for (const auto& v : variants) {
        if (v.source_z_nm() <= v.radius.nanometers) continue;
        bool seen = false;
        for (const auto& r : refs) seen = seen || (r.source.z_over_a == v.source.z_over_a && r.radius == v.radius);
        if (!seen) refs.push_back(v);
      }
      const auto ref_jobs = plan(refs, true, out, false);
      jobs.insert(jobs.end(), ref_jobs.begin(), ref_jobs.end());
      const auto results = run_jobs(jobs, n_threads, log_line);
      std::vector<HeightPoint> points;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& t = results[i].table;
        const auto& pk = t.peak();
        std::string flag = jobs[i].analytic ? "analytic" : "ok";
        for (const auto& row : t.rows) {
          if (row.flag == "not_decayed") flag = "not_decayed";
        }
        points.push_back({*jobs[i].config.source.z_over_a, t.delta_nm, jobs[i].analytic ? "analytic" : "fdtd",
                          pk.energy_ev, pk.purcell, t.scenario_hash, flag});
      }
      const auto summary = (fs::path(out) / "heights.csv").string();
      write_text_atomic(summary, format_height_summary(points));
      report_runs(jobs, results);
      std::printf("summary -> %s\n", summary.c_str());
      return 0;
    }

    if (sweep_g->parsed()) {
      int status = 0;
      for (const auto& c : scenarios) {
        auto variants = grid_variants(c);
        std::sort(variants.begin(), variants.end(), [](const ScenarioConfig& a, const ScenarioConfig& b) {
          return a.grid.delta.nanometers < b.grid.delta.nanometers;
        });
        const auto jobs = plan(variants, false, out, false);
        const auto results = run_jobs(jobs, n_threads, log_line);
        report_runs(jobs, results);
        for (std::size_t i = 1; i < jobs.size(); ++i) {
          const auto r = compare(results[i].table, results[0].table, tol);
          print_report(jobs[i].config.name + " vs " + jobs[0].config.name, r);
          if (!r.pass) status = 2;
        }
      }
      return status;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
