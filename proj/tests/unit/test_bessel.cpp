#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ldoskit/analytic/bessel.hpp"

using namespace ldoskit::analytic;
using cd = std::complex<double>;

namespace {
const cd I(0.0, 1.0);

cd j0(cd x) { return std::sin(x) / x; }
cd j1(cd x) { return std::sin(x) / (x * x) - std::cos(x) / x; }
cd h0(cd x) { return -I * std::exp(I * x) / x; }
cd h1(cd x) { return -std::exp(I * x) * (x + I) / (x * x); }
}  // namespace

TEST_CASE("low orders match closed forms") {
  CHECK(spherical_bessel(BesselKind::j, 0, 1.0).value.real() == doctest::Approx(0.841471).epsilon(1e-6));
  for (cd x : {cd(1.0, 0.0), cd(0.3, 0.2), cd(5.0, -0.5), cd(0.01, 0.0), cd(20.0, 3.0)}) {
    CAPTURE(x);
    CHECK(std::abs(spherical_bessel(BesselKind::j, 0, x).value - j0(x)) <= 1e-13 * std::abs(j0(x)));
    CHECK(std::abs(spherical_bessel(BesselKind::j, 1, x).value - j1(x)) <= 1e-10 * std::abs(j1(x)));
    CHECK(std::abs(spherical_bessel(BesselKind::h1, 0, x).value - h0(x)) <= 1e-13 * std::abs(h0(x)));
    CHECK(std::abs(spherical_bessel(BesselKind::h1, 1, x).value - h1(x)) <= 1e-13 * std::abs(h1(x)));
  }
}

TEST_CASE("real arguments agree with std::sph_bessel and std::sph_neumann") {
  for (int l = 0; l <= 40; l += 3) {
    for (double x : {0.05, 0.7, 3.0, 12.0, 45.0}) {
      CAPTURE(l);
      CAPTURE(x);
      const double jr = std::sph_bessel(l, x);
      const double yr = std::sph_neumann(l, x);
      const cd j = spherical_bessel(BesselKind::j, l, x).value;
      const cd h = spherical_bessel(BesselKind::h1, l, x).value;
      if (std::abs(jr) > 1e-290) CHECK(std::abs(j - jr) <= 1e-10 * std::abs(jr));
      if (std::abs(yr) < 1e290) CHECK(std::abs(h - cd(jr, yr)) <= 1e-10 * std::abs(cd(jr, yr)));
    }
  }
}

TEST_CASE("Wronskian j_l h1_l' - j_l' h1_l = i / x^2 for l <= 60") {
  for (cd x : {cd(0.5, 0.0), cd(2.0, 0.0), cd(30.0, 0.0), cd(1.5, 0.8), cd(0.2, 0.05), cd(4.0, -0.3),
               cd(0.8, 3.0)}) {
    const auto t = riccati_table(60, std::complex<long double>(x));
    for (int l = 0; l <= 60; ++l) {
      // In Riccati form: psi xi' - psi' xi = i.
      const auto w = t.psi[l] * t.dxi[l] - t.dpsi[l] * t.xi[l];
      CAPTURE(x);
      CAPTURE(l);
      CHECK(std::abs(std::complex<double>(w) - I) < 1e-9);
      if (l <= 20 && std::abs(x) > 0.3) {
        // The same identity through the double-precision spherical functions.
        const auto js = spherical_bessel(BesselKind::j, l, x);
        const auto hs = spherical_bessel(BesselKind::h1, l, x);
        const cd w2 = js.riccati * hs.riccati_derivative - js.riccati_derivative * hs.riccati;
        CHECK(std::abs(w2 - I) < 1e-9);
      }
    }
  }
}

TEST_CASE("h1_0(i x) decays as exp(-x)/x") {
  for (double x : {5.0, 20.0, 100.0}) {
    const cd h = spherical_bessel(BesselKind::h1, 0, cd(0.0, x)).value;
    CHECK(std::abs(h) == doctest::Approx(std::exp(-x) / x).epsilon(1e-12));
  }
}

TEST_CASE("small argument series j_l(x) ~ x^l / (2l+1)!!") {
  const double x = 1e-3;
  double dfact = 1.0;
  for (int l = 0; l <= 30; ++l) {
    if (l > 0) dfact *= 2 * l + 1;
    const auto t = riccati_table(30, x);
    const long double expect = std::pow(static_cast<long double>(x), l + 1) / dfact;
    CHECK(std::abs(t.psi[l] / expect - 1.0L) < 1e-6L);
  }
}

TEST_CASE("extended range reaches l = 150 at |x| = 0.01") {
  const auto t = riccati_table(150, {0.01L, 0.0L});
  CHECK(std::isfinite(std::abs(t.psi[150])));
  CHECK(std::isfinite(std::abs(t.xi[150])));
  CHECK(std::abs(t.psi[150]) > 0.0L);
  const auto w = t.psi[150] * t.dxi[150] - t.dpsi[150] * t.xi[150];
  CHECK(std::abs(std::complex<double>(w) - I) < 1e-9);
}

TEST_CASE("errors: h1 at the origin, negative order, double overflow") {
  CHECK_THROWS_AS(spherical_bessel(BesselKind::h1, 0, 0.0), std::domain_error);
  CHECK_THROWS_AS(spherical_bessel(BesselKind::j, -1, 1.0), std::domain_error);
  CHECK_THROWS_AS(spherical_bessel(BesselKind::h1, 150, 0.01), std::overflow_error);
  CHECK(spherical_bessel(BesselKind::j, 0, 0.0).value == cd(1.0, 0.0));
}
