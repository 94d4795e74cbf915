#include "ldoskit/cli/drivers.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace ldoskit::cli {

namespace {

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

}  // namespace

int resolve_threads(std::optional<int> flag) {
  int n = 1;
  if (flag) {
    n = *flag;
  } else if (const char* env = std::getenv("LDOSKIT_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0') throw std::invalid_argument("LDOSKIT_THREADS is not an integer: " + std::string(env));
    n = static_cast<int>(v);
  }
  if (n < 1) throw std::invalid_argument("thread count must be >= 1");
  return n;
}

std::vector<JobResult> run_jobs(const std::vector<Job>& jobs, int threads, const LogFn& log) {
  std::vector<JobResult> out(jobs.size());
  if (jobs.empty()) return out;
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  const int inner = std::max(1, threads / workers);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  LogFn safe_log;
  if (log) {
    safe_log = [&](const std::string& s) {
      std::lock_guard<std::mutex> lock(mu);
      log(s);
    };
  }

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed) return;
      try {
        const Job& job = jobs[i];
        const auto t0 = std::chrono::steady_clock::now();
        SpectrumTable t = job.analytic ? run_analytic(job.config) : run_fdtd(job.config, {inner, safe_log});
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!job.path.empty()) write_csv(job.path, t);
        out[i] = {std::move(t), sec};
        if (safe_log) {
          char buf[256];
          std::snprintf(buf, sizeof buf, "%s%s done in %.1f s", job.config.name.c_str(),
                        job.analytic ? " (analytic)" : "", sec);
          safe_log(buf);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<ScenarioConfig> grid_variants(const ScenarioConfig& base) {
  std::vector<double> deltas = base.sweep.delta_nm;
  if (deltas.empty()) deltas.push_back(base.grid.delta.nanometers);
  std::vector<ScenarioConfig> out;
  for (double d : deltas) {
    ScenarioConfig c = base;
    c.sweep = {};
    c.output.clear();
    c.grid.delta = {d};
    c.name = base.name + "_d" + tag(d);
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ScenarioConfig> height_variants(const ScenarioConfig& base) {
  if (!base.has_sphere()) throw std::invalid_argument("sweep-height: scenario has no sphere");
  if (base.sweep.z_over_a.empty()) throw std::invalid_argument("sweep-height: sweep.z_over_a is empty");
  std::vector<ScenarioConfig> out;
  for (const auto& g : grid_variants(base)) {
    for (double z : base.sweep.z_over_a) {
      ScenarioConfig c = g;
      c.source.z_nm.reset();
      c.source.z_over_a = z;
      c.name = base.name + "_z" + tag(z) + "_d" + tag(g.grid.delta.nanometers);
      c.validate();
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::string format_height_summary(const std::vector<HeightPoint>& points) {
  std::string s = std::string(kCsvHeader) + "\n" +
                  "z_over_a,delta_nm,source,peak_energy_ev,peak_purcell,scenario_hash,flag\n";
  for (const auto& p : points) {
    s += sci(p.z_over_a) + "," + sci(p.delta_nm) + "," + p.source + "," + sci(p.peak_energy_ev) + "," +
         sci(p.peak_purcell) + "," + p.scenario_hash + "," + p.flag + "\n";
  }
  return s;
}

}  // namespace ldoskit::cli
