#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>

#include "ldoskit/analytic/homogeneous.hpp"

using namespace ldoskit;
using namespace ldoskit::analytic;
using cd = std::complex<double>;

namespace {

// Brute-force oracle for int_cube e^{ikR}/(4 pi R): each octant is cut into three
// corner pyramids, and on each pyramid the Duffy map (x, x s, x t) removes the
// 1/R singularity. Tensor Gauss-Legendre in all three variables.
cd duffy_cube_integral(cd k, double delta) {
  using boost::math::quadrature::gauss;
  const double h = 0.5 * delta;
  auto re_im = [&](bool imag) {
    return gauss<double, 30>::integrate(
        [&](double s) {
          return gauss<double, 30>::integrate(
              [&](double t) {
                const double q = std::sqrt(1.0 + s * s + t * t);
                return gauss<double, 30>::integrate(
                    [&](double x) {
                      const cd v = x * std::exp(cd(0.0, 1.0) * k * x * q) / (4.0 * constants::pi * q);
                      return imag ? v.imag() : v.real();
                    },
                    0.0, h);
              },
              0.0, 1.0);
        },
        0.0, 1.0);
  };
  return 24.0 * cd(re_im(false), re_im(true));
}

cd medium_k(const Medium& m, Frequency e) { return vacuum_wavevector(e) * refractive_index(m, e); }

}  // namespace

TEST_CASE("hom_gf_im: vacuum at 500 nm and linearity in n") {
  const Frequency e{1239.8419843320026 / 500.0};
  CHECK(hom_gf_im(Medium::vacuum(), e) == doctest::Approx(1.05276e20).epsilon(1e-5));
  CHECK(hom_gf_im(Medium::dielectric(4.0), e) == doctest::Approx(2.0 * hom_gf_im(Medium::vacuum(), e)).epsilon(1e-15));
  CHECK_THROWS_AS(hom_gf_im(Medium::drude(DrudeModel::silver()), {2.5}), DivergentGreenFunction);
}

TEST_CASE("static cube integral equals the unit-cube centre potential") {
  // int over [-1/2, 1/2]^3 of 1/r = 2.3800772...
  const cd v = cube_helmholtz_integral(cd(1e-9, 0.0), 1.0);
  CHECK(4.0 * constants::pi * v.real() == doctest::Approx(2.3800772).epsilon(1e-7));
}

TEST_CASE("cube integral agrees with an independent Duffy quadrature") {
  const auto ag = Medium::drude(DrudeModel::silver());
  for (double e : {2.2, 3.0, 3.22, 3.5}) {
    for (double d : {1e-9, 2e-9, 20e-9}) {
      const cd k = medium_k(ag, {e});
      double achieved = 1.0;
      const cd a = cube_helmholtz_integral(k, d, &achieved);
      const cd b = duffy_cube_integral(k, d);
      CAPTURE(e);
      CAPTURE(d);
      CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
      CHECK(achieved <= 1e-6);
    }
  }
}

TEST_CASE("vacuum static limit: Re<G> -> -1/(3 delta^3)") {
  const double d = 2e-9;
  const cd g = cube_averaged_gf(Medium::vacuum(), {1e-6}, {2.0});
  CHECK(g.real() == doctest::Approx(-1.0 / (3.0 * d * d * d)).epsilon(1e-9));
}

TEST_CASE("vacuum: Im<G> reproduces k0^3/(6 pi) within 0.2% on both grids") {
  for (double e : {2.2, 3.22, 3.5}) {
    for (double d : {1.0, 2.0}) {
      const double ratio = cube_averaged_gf(Medium::vacuum(), {e}, {d}).imag() / vacuum_im_green({e});
      CHECK(std::abs(ratio - 1.0) <= 2e-3);
    }
  }
  // Deviation shrinks as (k0 delta)^2.
  const double e = 3.0;
  const double d1 = 1.0 - cube_averaged_gf(Medium::vacuum(), {e}, {20.0}).imag() / vacuum_im_green({e});
  const double d2 = 1.0 - cube_averaged_gf(Medium::vacuum(), {e}, {10.0}).imag() / vacuum_im_green({e});
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("lossy medium: Im<G> depends on the cell size") {
  const auto ag = Medium::drude(DrudeModel::silver());
  const double im1 = cube_averaged_gf(ag, {3.22}, {1.0}).imag();
  const double im2 = cube_averaged_gf(ag, {3.22}, {2.0}).imag();
  CHECK(im1 > 0.0);
  CHECK(im2 > 0.0);
  CHECK(im1 / im2 > 5.0);
}

TEST_CASE("passivity of the cube average in lossy media") {
  const auto ag = Medium::drude(DrudeModel::silver());
  for (double e = 2.2; e <= 3.5 + 1e-9; e += 0.05) {
    for (double d : {0.5, 1.0, 2.0, 5.0}) CHECK(cube_averaged_gf(ag, {e}, {d}).imag() >= 0.0);
  }
}

TEST_CASE("dielectric medium: delta term scales as 1/eps") {
  const cd g = cube_averaged_gf(Medium::dielectric(4.0), {1e-6}, {2.0});
  const double d = 2e-9;
  CHECK(g.real() == doctest::Approx(-1.0 / (12.0 * d * d * d)).epsilon(1e-9));
}

TEST_CASE("invalid cell size is rejected") {
  CHECK_THROWS(cube_averaged_gf(Medium::vacuum(), {2.0}, {0.0}));
  CHECK_THROWS(cube_averaged_gf(Medium::vacuum(), {0.0}, {1.0}));
}
