#include "ldoskit/fdtd/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <utility>

namespace ldoskit::fdtd {

namespace {

constexpr int next_axis(int c) { return (c + 1) % 3; }

// Offset (in cells) of a field sample from its node along axis a.
double sample_offset(bool electric, int c, int a) {
  if (electric) return c == a ? 0.5 : 0.0;
  return c == a ? 0.0 : 0.5;
}

struct Segments {
  int low_end = 0;     // [0, low_end) is absorbing
  int high_begin = 0;  // [high_begin, n) is absorbing
};

Segments z_segments(const std::vector<unsigned char>& in) {
  const int n = static_cast<int>(in.size());
  Segments s{0, n};
  while (s.low_end < n && in[s.low_end]) ++s.low_end;
  while (s.high_begin > s.low_end && in[s.high_begin - 1]) --s.high_begin;
  return s;
}

}  // namespace

Simulation::Simulation(Lattice lattice, MaterialMap materials, SourceWaveform source, std::vector<Frequency> energies,
                       const KernelSet& kernels, EngineOptions options)
    : lattice_(std::move(lattice)),
      materials_(std::move(materials)),
      source_(source),
      kernels_(&kernels),
      options_(options),
      monitor_(std::move(energies), lattice_.dt()) {
  const std::size_t size = lattice_.size();
  for (int c = 0; c < 3; ++c) {
    if (materials_.id[c].size() != size) throw std::invalid_argument("simulation: material map does not fit lattice");
    e_[c].assign(size, 0.0);
    h_[c].assign(size, 0.0);
  }
  if (materials_.media.empty() || materials_.media.size() > 255) {
    throw std::invalid_argument("simulation: need 1..255 media");
  }
  for (int a = 0; a < 3; ++a) {
    const auto& ax = lattice_.axis(a);
    if ((ax.low == Boundary::periodic) != (ax.high == Boundary::periodic)) {
      throw std::invalid_argument("simulation: periodic boundaries must be set on both ends of an axis");
    }
    if (ax.high == Boundary::mirror_node || ax.high == Boundary::mirror_half) {
      throw std::invalid_argument("simulation: mirror planes are supported on the low end only");
    }
  }

  const double dt = lattice_.dt();
  const double delta = lattice_.delta();
  for (const auto& m : materials_.media) {
    const auto u = edge_update(m, dt);
    coef_.push_back({u.ca, u.cb / delta, u.cb * u.ade.kappa, u.ade.alpha, u.ade.beta, u.dispersive});
    any_drude_ = any_drude_ || u.dispersive;
  }
  if (any_drude_) {
    for (auto& v : j_) v.assign(size, 0.0);
  }

  CpmlParams cp = options_.cpml;
  if (cp.eps_background <= 0.0) cp.eps_background = materials_.media[0].eps_instantaneous();
  for (int a = 0; a < 3; ++a) {
    const auto& ax = lattice_.axis(a);
    has_pml_[a] = (ax.low == Boundary::pml && ax.pml_low > 0) || (ax.high == Boundary::pml && ax.pml_high > 0);
    cpml_[a] = make_cpml_profile(ax, delta, dt, cp);
  }
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      if (a == c || !has_pml_[a]) continue;
      psi_e_[c][a].assign(size, 0.0);
      psi_h_[c][a].assign(size, 0.0);
    }
  }
  ch_ = dt / (constants::mu0 * delta);
  build_runs();
}

void Simulation::build_runs() {
  const int nx = lattice_.n(0), ny = lattice_.n(1), nz = lattice_.n(2);
  for (int c = 0; c < 3; ++c) {
    const int k0 = c == 2 ? 0 : 1;
    const int k1 = nz - 1;
    auto& runs = runs_[c];
    auto& off = run_offsets_[c];
    runs.clear();
    off.assign(static_cast<std::size_t>(nx) * ny + 1, 0);
    const auto& id = materials_.id[c];
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        const std::size_t base = lattice_.index(i, j, 0);
        int k = k0;
        while (k < k1) {
          const std::uint8_t m = id[base + k];
          int e = k + 1;
          while (e < k1 && id[base + e] == m) ++e;
          runs.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(e), m});
          k = e;
        }
        off[static_cast<std::size_t>(i) * ny + j + 1] = static_cast<std::uint32_t>(runs.size());
      }
    }
  }
}

void Simulation::update_h() {
  const int nx = lattice_.n(0), ny = lattice_.n(1), nz = lattice_.n(2);
  const std::size_t stride[3] = {static_cast<std::size_t>(ny) * nz, static_cast<std::size_t>(nz), 1};
  const KernelSet& K = *kernels_;
  const Segments zs = z_segments(cpml_[2].in_half);
  const int len = nz - 1;
  const int zlo = std::min(zs.low_end, len), zhi = std::max(zs.high_begin, zlo);

  for (int c = 0; c < 3; ++c) {
    const int p = next_axis(c), q = next_axis(p);
    const double* eq = e_[q].data();
    const double* ep = e_[p].data();
    double* h = h_[c].data();
    const bool z_pml = has_pml_[2] && (p == 2 || q == 2);
#pragma omp parallel num_threads(options_.threads)
    {
      std::vector<double> d1(nz), d2(nz);
#pragma omp for schedule(static)
      for (int i = 0; i < nx - 1; ++i) {
        for (int j = 0; j < ny - 1; ++j) {
          const std::size_t b = lattice_.index(i, j, 0);
          bool xy_pml = false;
          for (int a : {p, q}) {
            if (a < 2 && has_pml_[a] && cpml_[a].in_half[a == 0 ? i : j]) xy_pml = true;
          }
          // Plain curl on [s0, s1).
          auto fast = [&](int s0, int s1) {
            if (s1 <= s0) return;
            K.update_h_fused(h + b + s0, eq + b + s0 + stride[p], eq + b + s0, ep + b + s0 + stride[q], ep + b + s0,
                             ch_, s1 - s0);
          };
          // Curl with CPML corrections on [s0, s1).
          auto slow = [&](int s0, int s1) {
            if (s1 <= s0) return;
            const int n = s1 - s0;
            K.diff(eq + b + s0 + stride[p], eq + b + s0, d1.data() + s0, n);
            K.diff(ep + b + s0 + stride[q], ep + b + s0, d2.data() + s0, n);
            for (int t = 0; t < 2; ++t) {
              const int a = t == 0 ? p : q;
              if (!has_pml_[a]) continue;
              double* d = t == 0 ? d1.data() : d2.data();
              double* psi = psi_h_[c][a].data() + b;
              const auto& pr = cpml_[a];
              if (a < 2) {
                const int r = a == 0 ? i : j;
                if (pr.in_half[r]) {
                  K.cpml_uniform(psi + s0, d + s0, pr.b_half[r], pr.c_half[r], pr.inv_kappa_half[r], n);
                }
                continue;
              }
              for (auto [u0, u1] : {std::pair{s0, std::min(s1, zlo)}, std::pair{std::max(s0, zhi), s1}}) {
                if (u1 <= u0) continue;
                K.cpml_graded(psi + u0, d + u0, pr.b_half.data() + u0, pr.c_half.data() + u0,
                              pr.inv_kappa_half.data() + u0, u1 - u0);
              }
            }
            K.update_h(h + b + s0, d1.data() + s0, d2.data() + s0, ch_, n);
          };
          if (xy_pml) {
            slow(0, len);
          } else if (z_pml) {
            slow(0, zlo);
            fast(zlo, zhi);
            slow(zhi, len);
          } else {
            fast(0, len);
          }
        }
      }
    }
  }
}

void Simulation::update_e(double j_source) {
  const int nx = lattice_.n(0), ny = lattice_.n(1), nz = lattice_.n(2);
  const std::size_t stride[3] = {static_cast<std::size_t>(ny) * nz, static_cast<std::size_t>(nz), 1};
  const KernelSet& K = *kernels_;
  const Segments zs = z_segments(cpml_[2].in_node);
  const int src_c = static_cast<int>(lattice_.source_component());
  const auto& sn = lattice_.source_node();
  const double src_term = j_source * lattice_.delta();

  for (int c = 0; c < 3; ++c) {
    const int p = next_axis(c), q = next_axis(p);
    const double* hq = h_[q].data();
    const double* hp = h_[p].data();
    double* e = e_[c].data();
    double* jc = any_drude_ ? j_[c].data() : nullptr;
    const int i0 = c == 0 ? 0 : 1, j0 = c == 1 ? 0 : 1, k0 = c == 2 ? 0 : 1;
    const int k1 = nz - 1;
    const int zlo = std::clamp(zs.low_end, k0, k1), zhi = std::clamp(zs.high_begin, zlo, k1);
    const bool z_pml = has_pml_[2] && (p == 2 || q == 2);
    const auto& runs = runs_[c];
    const auto& offs = run_offsets_[c];
#pragma omp parallel num_threads(options_.threads)
    {
      // Scratch is indexed by absolute k.
      std::vector<double> d1(nz), d2(nz);
#pragma omp for schedule(static)
      for (int i = i0; i < nx - 1; ++i) {
        for (int j = j0; j < ny - 1; ++j) {
          const std::size_t b = lattice_.index(i, j, 0);
          const std::size_t row = static_cast<std::size_t>(i) * ny + j;
          const bool src_row = c == src_c && i == sn[0] && j == sn[1];
          bool xy_pml = false;
          for (int a : {p, q}) {
            if (a < 2 && has_pml_[a] && cpml_[a].in_node[a == 0 ? i : j]) xy_pml = true;
          }
          auto fast = [&](int s0, int s1) {
            for (std::uint32_t r = offs[row]; r < offs[row + 1]; ++r) {
              const Run& run = runs[r];
              const int u0 = std::max<int>(s0, run.begin), u1 = std::min<int>(s1, run.end);
              if (u1 <= u0) continue;
              const Coef& cf = coef_[run.material];
              const std::size_t o = b + u0;
              if (cf.drude) {
                K.update_e_drude_fused(e + o, jc + o, hq + o, hq + o - stride[p], hp + o, hp + o - stride[q], cf.ca,
                                       cf.cb, cf.cj, cf.alpha, cf.beta, u1 - u0);
              } else {
                K.update_e_fused(e + o, hq + o, hq + o - stride[p], hp + o, hp + o - stride[q], cf.ca, cf.cb, u1 - u0);
              }
            }
          };
          auto slow = [&](int s0, int s1) {
            if (s1 <= s0) return;
            const int n = s1 - s0;
            K.diff(hq + b + s0, hq + b + s0 - stride[p], d1.data() + s0, n);
            K.diff(hp + b + s0, hp + b + s0 - stride[q], d2.data() + s0, n);
            for (int t = 0; t < 2; ++t) {
              const int a = t == 0 ? p : q;
              if (!has_pml_[a]) continue;
              double* d = t == 0 ? d1.data() : d2.data();
              double* psi = psi_e_[c][a].data() + b;
              const auto& pr = cpml_[a];
              if (a < 2) {
                const int r = a == 0 ? i : j;
                if (pr.in_node[r]) {
                  K.cpml_uniform(psi + s0, d + s0, pr.b_node[r], pr.c_node[r], pr.inv_kappa_node[r], n);
                }
                continue;
              }
              for (auto [u0, u1] : {std::pair{s0, std::min(s1, zlo)}, std::pair{std::max(s0, zhi), s1}}) {
                if (u1 <= u0) continue;
                K.cpml_graded(psi + u0, d + u0, pr.b_node.data() + u0, pr.c_node.data() + u0,
                              pr.inv_kappa_node.data() + u0, u1 - u0);
              }
            }
            if (src_row && sn[2] >= s0 && sn[2] < s1) d1[sn[2]] -= src_term;
            for (std::uint32_t r = offs[row]; r < offs[row + 1]; ++r) {
              const Run& run = runs[r];
              const int u0 = std::max<int>(s0, run.begin), u1 = std::min<int>(s1, run.end);
              if (u1 <= u0) continue;
              const Coef& cf = coef_[run.material];
              if (cf.drude) {
                K.update_e_drude(e + b + u0, jc + b + u0, d1.data() + u0, d2.data() + u0, cf.ca, cf.cb, cf.cj,
                                 cf.alpha, cf.beta, u1 - u0);
              } else {
                K.update_e(e + b + u0, d1.data() + u0, d2.data() + u0, cf.ca, cf.cb, u1 - u0);
              }
            }
          };
          if (xy_pml || src_row) {
            slow(k0, k1);
          } else if (z_pml) {
            slow(k0, zlo);
            fast(zlo, zhi);
            slow(zhi, k1);
          } else {
            fast(k0, k1);
          }
        }
      }
    }
  }
}

void Simulation::fill_ghosts(bool electric) {
  const int n[3] = {lattice_.n(0), lattice_.n(1), lattice_.n(2)};
  auto& fields = electric ? e_ : h_;
  auto copy_plane = [&](std::vector<double>& f, int a, int dst, int src, double sign) {
    if (a == 0) {
      const std::size_t plane = static_cast<std::size_t>(n[1]) * n[2];
      const double* s = f.data() + lattice_.index(src, 0, 0);
      double* d = f.data() + lattice_.index(dst, 0, 0);
      for (std::size_t t = 0; t < plane; ++t) d[t] = sign * s[t];
    } else if (a == 1) {
      for (int i = 0; i < n[0]; ++i) {
        const double* s = f.data() + lattice_.index(i, src, 0);
        double* d = f.data() + lattice_.index(i, dst, 0);
        for (int k = 0; k < n[2]; ++k) d[k] = sign * s[k];
      }
    } else {
      for (int i = 0; i < n[0]; ++i) {
        for (int j = 0; j < n[1]; ++j) {
          const std::size_t r = lattice_.index(i, j, 0);
          f[r + dst] = sign * f[r + src];
        }
      }
    }
  };
  const int d = static_cast<int>(lattice_.source_component());
  for (int a = 0; a < 3; ++a) {
    const auto& ax = lattice_.axis(a);
    if (ax.low == Boundary::periodic) {
      for (auto& f : fields) {
        copy_plane(f, a, 0, n[a] - 2, 1.0);
        copy_plane(f, a, n[a] - 1, 1, 1.0);
      }
      continue;
    }
    if (ax.low != Boundary::mirror_node && ax.low != Boundary::mirror_half) continue;
    const double plane = ax.low == Boundary::mirror_node ? 1.0 : 1.5;
    const double s = a == d ? -1.0 : 1.0;
    for (int c = 0; c < 3; ++c) {
      const double off = sample_offset(electric, c, a);
      const double parity = electric ? (c == a ? -s : s) : (c == a ? s : -s);
      for (int g = 0; g + off < plane - 1e-9; ++g) {
        const int src = static_cast<int>(std::lround(2.0 * plane - (g + off) - off));
        copy_plane(fields[c], a, g, src, parity);
      }
    }
  }
}

void Simulation::step() {
  const double dt = lattice_.dt();
  const double js = source_((n_ + 0.5) * dt);
  monitor_.accumulate(n_, source_field(), js);
  update_h();
  fill_ghosts(false);
  update_e(js);
  fill_ghosts(true);
  ++n_;
  if (!std::isfinite(source_field())) {
    throw InstabilityError("non-finite field at the source after step " + std::to_string(n_), n_);
  }
}

double Simulation::source_field() const {
  return e_[static_cast<int>(lattice_.source_component())][lattice_.source_index()];
}

const std::vector<double>& Simulation::field(Field f) const {
  const int i = static_cast<int>(f);
  return i < 3 ? e_[i] : h_[i - 3];
}

double Simulation::max_abs_e() const {
  double m = 0.0;
  for (const auto& f : e_) {
    for (double v : f) m = std::max(m, std::abs(v));
  }
  return m;
}

void Simulation::check_finite() const {
  for (const auto* group : {&e_, &h_}) {
    for (const auto& f : *group) {
      for (double v : f) {
        if (!std::isfinite(v)) throw InstabilityError("non-finite field after step " + std::to_string(n_), n_);
      }
    }
  }
}

double Simulation::field_energy() const {
  const double dv = lattice_.delta() * lattice_.delta() * lattice_.delta();
  std::vector<double> eps;
  for (const auto& m : materials_.media) eps.push_back(m.eps_instantaneous());
  double w = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto& id = materials_.id[c];
    for (std::size_t t = 0; t < e_[c].size(); ++t) {
      w += constants::eps0 * eps[id[t]] * e_[c][t] * e_[c][t] + constants::mu0 * h_[c][t] * h_[c][t];
    }
  }
  return 0.5 * w * dv;
}

RunResult Simulation::run(const RunControl& control) {
  if (control.decay_threshold <= 0.0 || control.max_steps <= 0) {
    throw std::invalid_argument("run: decay_threshold and max_steps must be positive");
  }
  const double dt = lattice_.dt();
  long window = control.window_steps;
  if (window <= 0) {
    double w_min = 0.0;
    for (const auto& f : monitor_.energies()) {
      const double w = ev_to_omega(f);
      w_min = w_min == 0.0 ? w : std::min(w_min, w);
    }
    window = w_min > 0.0 ? static_cast<long>(std::ceil(2.0 * 2.0 * constants::pi / (w_min * dt))) : 1000;
  }

  RunResult out;
  double peak = 0.0, window_max = 0.0;
  long in_window = 0;
  const long off_step = static_cast<long>(std::ceil(source_.off_time() / dt)) + 1;
  out.termination = "max_steps";
  while (n_ < control.max_steps) {
    step();
    const double v = std::abs(source_field());
    peak = std::max(peak, v);
    if (control.nan_check_interval > 0 && n_ % control.nan_check_interval == 0) check_finite();
    if (n_ <= off_step) continue;
    window_max = std::max(window_max, v);
    if (++in_window < window) continue;
    out.residual = peak > 0.0 ? window_max / peak : 0.0;
    if (control.progress) control.progress(n_, out.residual);
    if (out.residual < control.decay_threshold) {
      out.decayed = true;
      out.termination = "decayed";
      break;
    }
    window_max = 0.0;
    in_window = 0;
  }
  if (!out.decayed && in_window > 0 && peak > 0.0) out.residual = std::max(out.residual, window_max / peak);
  out.energies = monitor_.energies();
  out.e_src = monitor_.e();
  out.j_src = monitor_.j();
  out.steps = n_;
  out.peak = peak;
  return out;
}

void Simulation::dump_slice(const std::string& path, Field f, int axis, int index) const {
  if (axis < 0 || axis > 2 || index < 0 || index >= lattice_.n(axis)) {
    throw std::invalid_argument("dump_slice: plane outside the lattice");
  }
  const auto& data = field(f);
  const int a1 = axis == 0 ? 1 : 0;
  const int a2 = axis == 2 ? 1 : 2;
  const std::uint32_t n1 = lattice_.n(a1), n2 = lattice_.n(a2);
  std::vector<float> buf;
  buf.reserve(static_cast<std::size_t>(n1) * n2);
  for (std::uint32_t u = 0; u < n1; ++u) {
    for (std::uint32_t v = 0; v < n2; ++v) {
      int idx[3];
      idx[axis] = index;
      idx[a1] = static_cast<int>(u);
      idx[a2] = static_cast<int>(v);
      buf.push_back(static_cast<float>(data[lattice_.index(idx[0], idx[1], idx[2])]));
    }
  }
  static_assert(std::endian::native == std::endian::little, "slice dump assumes a little-endian host");
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("dump_slice: cannot open " + tmp);
    os.write(reinterpret_cast<const char*>(&n1), 4);
    os.write(reinterpret_cast<const char*>(&n2), 4);
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!os) throw std::runtime_error("dump_slice: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ldoskit::fdtd
