#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "ldoskit/fdtd/engine.hpp"
#include "ldoskit/fdtd/kernels.hpp"

using namespace ldoskit;
using namespace ldoskit::fdtd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("kernel selection") {
  CHECK(select_kernels(KernelChoice::scalar).name == "scalar");
  CHECK(parse_kernel_choice("auto") == KernelChoice::automatic);
  CHECK_THROWS_AS(parse_kernel_choice("neon"), std::invalid_argument);
  const KernelSet& k = select_kernels();
  MESSAGE("automatic kernel set: " << k.name);
  if (avx2_kernels()) CHECK(k.name == "avx2");
}

TEST_CASE("SIMD row kernels are bit-identical to the scalar reference") {
  const KernelSet* simd = avx2_kernels();
  if (!simd) {
    MESSAGE("AVX2 kernels unavailable; nothing to compare");
    return;
  }
  const KernelSet& ref = scalar_kernels();
  std::mt19937_64 rng(42);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 64u, 101u}) {
    CAPTURE(n);
    const auto a = random_vec(rng, n), b = random_vec(rng, n);
    {
      std::vector<double> d1(n), d2(n);
      ref.diff(a.data(), b.data(), d1.data(), n);
      simd->diff(a.data(), b.data(), d2.data(), n);
      CHECK(same_bits(d1, d2));
    }
    {
      auto p1 = random_vec(rng, n), d1 = random_vec(rng, n);
      auto p2 = p1, d2 = d1;
      ref.cpml_uniform(p1.data(), d1.data(), 0.93, -0.021, 0.4, n);
      simd->cpml_uniform(p2.data(), d2.data(), 0.93, -0.021, 0.4, n);
      CHECK(same_bits(p1, p2));
      CHECK(same_bits(d1, d2));
    }
    {
      auto p1 = random_vec(rng, n), d1 = random_vec(rng, n);
      auto p2 = p1, d2 = d1;
      const auto bb = random_vec(rng, n), cc = random_vec(rng, n), kk = random_vec(rng, n);
      ref.cpml_graded(p1.data(), d1.data(), bb.data(), cc.data(), kk.data(), n);
      simd->cpml_graded(p2.data(), d2.data(), bb.data(), cc.data(), kk.data(), n);
      CHECK(same_bits(p1, p2));
      CHECK(same_bits(d1, d2));
    }
    {
      auto h1 = random_vec(rng, n);
      auto h2 = h1;
      ref.update_h(h1.data(), a.data(), b.data(), 1.7e-3, n);
      simd->update_h(h2.data(), a.data(), b.data(), 1.7e-3, n);
      CHECK(same_bits(h1, h2));
    }
    {
      auto e1 = random_vec(rng, n);
      auto e2 = e1;
      ref.update_e(e1.data(), a.data(), b.data(), 0.97, 31.0, n);
      simd->update_e(e2.data(), a.data(), b.data(), 0.97, 31.0, n);
      CHECK(same_bits(e1, e2));
    }
    {
      auto e1 = random_vec(rng, n), j1 = random_vec(rng, n);
      auto e2 = e1, j2 = j1;
      ref.update_e_drude(e1.data(), j1.data(), a.data(), b.data(), 0.9, 12.0, 3.0, 0.999, 0.02, n);
      simd->update_e_drude(e2.data(), j2.data(), a.data(), b.data(), 0.9, 12.0, 3.0, 0.999, 0.02, n);
      CHECK(same_bits(e1, e2));
      CHECK(same_bits(j1, j2));
    }
    {
      // Fused forms: against SIMD and against diff-then-update.
      const auto c = random_vec(rng, n), d = random_vec(rng, n);
      std::vector<double> da(n), db(n);
      ref.diff(a.data(), b.data(), da.data(), n);
      ref.diff(c.data(), d.data(), db.data(), n);
      auto h1 = random_vec(rng, n);
      auto h2 = h1, h3 = h1;
      ref.update_h_fused(h1.data(), a.data(), b.data(), c.data(), d.data(), 1.7e-3, n);
      simd->update_h_fused(h2.data(), a.data(), b.data(), c.data(), d.data(), 1.7e-3, n);
      ref.update_h(h3.data(), da.data(), db.data(), 1.7e-3, n);
      CHECK(same_bits(h1, h2));
      CHECK(same_bits(h1, h3));
      auto e1 = random_vec(rng, n);
      auto e2 = e1, e3 = e1;
      ref.update_e_fused(e1.data(), a.data(), b.data(), c.data(), d.data(), 0.97, 31.0, n);
      simd->update_e_fused(e2.data(), a.data(), b.data(), c.data(), d.data(), 0.97, 31.0, n);
      ref.update_e(e3.data(), da.data(), db.data(), 0.97, 31.0, n);
      CHECK(same_bits(e1, e2));
      CHECK(same_bits(e1, e3));
      auto f1 = random_vec(rng, n), j1 = random_vec(rng, n);
      auto f2 = f1, f3 = f1, j2 = j1, j3 = j1;
      ref.update_e_drude_fused(f1.data(), j1.data(), a.data(), b.data(), c.data(), d.data(), 0.9, 12.0, 3.0, 0.999,
                               0.02, n);
      simd->update_e_drude_fused(f2.data(), j2.data(), a.data(), b.data(), c.data(), d.data(), 0.9, 12.0, 3.0, 0.999,
                                 0.02, n);
      ref.update_e_drude(f3.data(), j3.data(), da.data(), db.data(), 0.9, 12.0, 3.0, 0.999, 0.02, n);
      CHECK(same_bits(f1, f2));
      CHECK(same_bits(j1, j2));
      CHECK(same_bits(f1, f3));
      CHECK(same_bits(j1, j3));
    }
  }
}

TEST_CASE("full simulation: SIMD and scalar runs agree bit for bit") {
  const KernelSet* simd = avx2_kernels();
  if (!simd) return;
  GridSpec g;
  g.delta = {1.0};
  g.pml_cells = 6;
  g.interior_cells = {21, 19, 23};
  g.use_symmetry = false;
  const auto lattice = make_lattice(g, Component::y, {false, false, false});
  GeometrySpec geo;
  geo.sphere = SphereRegion{{5.0}, Medium::drude(DrudeModel::silver()), {0.0, 0.0, -7.0}};
  const auto mats = build_geometry(geo, lattice);
  const auto src = SourceWaveform::covering({2.2}, {3.5});
  Simulation a(lattice, mats, src, {{2.5}, {3.0}}, scalar_kernels());
  Simulation b(lattice, mats, src, {{2.5}, {3.0}}, *simd);
  for (int n = 0; n < 300; ++n) {
    a.step();
    b.step();
  }
  for (Field f : {Field::ex, Field::ey, Field::ez, Field::hx, Field::hy, Field::hz}) {
    CHECK(same_bits(a.field(f), b.field(f)));
  }
  CHECK(a.monitor().e() == b.monitor().e());
}
