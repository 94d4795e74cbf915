#include <doctest.h>

#include <cmath>
#include <random>

#include "ldoskit/materials.hpp"

using namespace ldoskit;
using cd = std::complex<double>;

namespace {

// Runs the ADE update under a unit harmonic drive E^n = exp(-i w n dt) until the
// start-up transient has died away and reads the permittivity off the E-update
// balance  eps0 eps_inf dE/dt + <J> = eps0 eps dE/dt.
cd simulated_discrete_eps(const DrudeModel& m, double dt, Frequency e) {
  const auto c = ade_coefficients(m, dt);
  const double w = ev_to_omega(e);
  const double g = ev_to_omega_or_zero(m.damping_energy);
  const long steps = static_cast<long>(30.0 / (g * dt)) + 10;
  cd j(0.0, 0.0);
  cd e_n(1.0, 0.0);
  const cd rot = std::exp(cd(0.0, -w * dt));
  cd j_prev, e_prev;
  for (long n = 0; n < steps; ++n) {
    const cd e_next = e_n * rot;
    j_prev = j;
    j = c.alpha * j + c.beta * (e_next + e_n);
    e_prev = e_n;
    e_n = e_next;
  }
  const cd dedt = (e_n - e_prev) / dt;
  const cd j_avg = 0.5 * (j + j_prev);
  return m.eps_inf + j_avg / (constants::eps0 * dedt);
}

}  // namespace

TEST_CASE("Drude permittivity crosses zero at the bulk plasma resonance") {
  const auto ag = Medium::drude(DrudeModel::silver());
  const double wp = 7.89, g = 0.051;
  const double root = std::sqrt(wp * wp / 6.0 - g * g);  // closed-form Re eps = 0
  CHECK(std::abs(permittivity(ag, {root}).real()) < 1e-12);
  CHECK(root == doctest::Approx(3.2205).epsilon(1e-4));
  CHECK(std::abs(root - 3.23) < 0.01);
}

TEST_CASE("lossless Drude hits eps = -2 at wp / sqrt(eps_inf + 2)") {
  DrudeModel m;
  m.damping_energy = {0.0};
  const double e = m.plasma_energy.energy_ev / std::sqrt(m.eps_inf + 2.0);
  const cd eps = permittivity(Medium::drude(m), {e});
  CHECK(eps.real() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(eps.imag() == 0.0);
}

TEST_CASE("high-frequency limit approaches eps_inf") {
  const cd eps = permittivity(Medium::drude(DrudeModel::silver()), {100.0});
  CHECK(std::abs(eps - cd(6.0, 0.0)) < 1e-2);
}

TEST_CASE("passivity: Im eps >= 0 for random media and energies") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    DrudeModel m{1.0 + 10 * u(rng), {20 * u(rng)}, {u(rng)}};
    const Frequency e{0.01 + 10 * u(rng)};
    CHECK(permittivity(Medium::drude(m), e).imag() >= 0.0);
    CHECK(refractive_index(Medium::drude(m), e).imag() >= 0.0);
  }
  CHECK(permittivity(Medium::vacuum(), {2.0}) == cd(1.0, 0.0));
  CHECK(permittivity(Medium::dielectric(12.0), {2.0}) == cd(12.0, 0.0));
}

TEST_CASE("refractive index uses the principal branch") {
  CHECK(refractive_index(Medium::dielectric(4.0), {1.0}) == cd(2.0, 0.0));
  DrudeModel m{1.0, {2.0}, {0.0}};
  const double e = 2.0 / std::sqrt(2.0);  // eps = 1 - 4/2 = -1
  const cd n = refractive_index(Medium::drude(m), {e});
  CHECK(std::abs(n - cd(0.0, 1.0)) < 1e-14);
  const auto ag = Medium::drude(DrudeModel::silver());
  const cd n25 = refractive_index(ag, {2.5});
  CHECK(std::abs(n25 * n25 - permittivity(ag, {2.5})) < 1e-12);
  CHECK(n25.imag() > 0.0);
}

TEST_CASE("invalid media and frequencies are rejected") {
  CHECK_THROWS_AS(Medium::dielectric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Medium::drude({0.5, {1.0}, {0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(Medium::drude({6.0, {-1.0}, {0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(permittivity(Medium::vacuum(), {0.0}), std::domain_error);
  CHECK_THROWS_AS(ade_coefficients(DrudeModel::silver(), 0.0), std::invalid_argument);
}

TEST_CASE("ADE with zero plasma frequency carries no current") {
  DrudeModel m{6.0, {0.0}, {0.051}};
  const auto c = ade_coefficients(m, 2e-18);
  CHECK(c.beta == 0.0);
  double j = 0.0;
  for (int n = 0; n < 1000; ++n) j = c.alpha * j + c.beta * (std::sin(0.01 * n) + std::sin(0.01 * (n + 1)));
  CHECK(j == 0.0);
}

TEST_CASE("undamped ADE is a unit-modulus recursion") {
  DrudeModel m{6.0, {7.89}, {0.0}};
  const auto c = ade_coefficients(m, 2e-18);
  CHECK(std::abs(c.alpha) == 1.0);
  CHECK(c.kappa == 1.0);
}

TEST_CASE("discrete Drude response at 3 eV, dt = 2e-18 s") {
  const auto m = DrudeModel::silver();
  const double dt = 2e-18;
  const cd simulated = simulated_discrete_eps(m, dt, {3.0});
  const cd exact = permittivity(Medium::drude(m), {3.0});
  CHECK(std::abs(simulated - exact) / std::abs(exact) <= 5e-3);
  // The closed form used elsewhere agrees with the simulated recursion.
  const cd closed = discrete_permittivity(Medium::drude(m), dt, {3.0});
  CHECK(std::abs(closed - simulated) / std::abs(simulated) < 1e-8);
}

TEST_CASE("discrete Drude response converges with order >= 2 in dt") {
  const auto m = DrudeModel::silver();
  const Frequency e{3.0};
  const cd exact = permittivity(Medium::drude(m), e);
  double err[3];
  double dt = 2e-17;
  for (double& x : err) {
    x = std::abs(simulated_discrete_eps(m, dt, e) - exact);
    dt *= 0.5;
  }
  const double p1 = std::log2(err[0] / err[1]);
  const double p2 = std::log2(err[1] / err[2]);
  MESSAGE("observed orders " << p1 << ", " << p2);
  CHECK(p1 >= 2.0 - 1e-3);
  CHECK(p2 >= 2.0 - 1e-3);
}

TEST_CASE("edge update reduces to the plain Yee coefficient for dielectrics") {
  const double dt = 1e-18;
  const auto u = edge_update(Medium::dielectric(4.0), dt);
  CHECK(u.ca == 1.0);
  CHECK(u.cb == doctest::Approx(dt / (constants::eps0 * 4.0)));
  CHECK_FALSE(u.dispersive);
  const auto d = edge_update(Medium::drude(DrudeModel::silver()), dt);
  CHECK(d.dispersive);
  CHECK(d.ca < 1.0);
}
