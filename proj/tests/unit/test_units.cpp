#include <doctest.h>

#include <random>
#include <stdexcept>

#include "ldoskit/units.hpp"

using namespace ldoskit;

TEST_CASE("ev_to_omega matches CODATA q_e/hbar") {
  // q_e / hbar with CODATA 2018 exact q_e and hbar = 1.054571817e-34 J s.
  CHECK(ev_to_omega({1.0}) == doctest::Approx(1.5192674488e15).epsilon(1e-10));
  CHECK(ev_to_omega({3.23}) == doctest::Approx(3.23 * ev_to_omega({1.0})).epsilon(1e-15));
}

TEST_CASE("non-positive energies are rejected") {
  CHECK_THROWS_AS(ev_to_omega({0.0}), std::domain_error);
  CHECK_THROWS_AS(ev_to_omega({-1.0}), std::domain_error);
  CHECK_THROWS_AS(vacuum_wavevector({0.0}), std::domain_error);
  CHECK_THROWS_AS(omega_to_ev(0.0), std::domain_error);
  CHECK(ev_to_omega_or_zero({0.0}) == 0.0);
}

TEST_CASE("vacuum wavevector at 500 nm") {
  // hc = 1239.841984 eV nm, so 500 nm is 2.479683968 eV and k0 = 2 pi / 500 nm.
  const double e500 = 1239.8419843320026 / 500.0;
  CHECK(vacuum_wavevector({e500}) == doctest::Approx(2.0 * constants::pi / 500e-9).epsilon(1e-9));
  CHECK(vacuum_wavevector({2.4797}) == doctest::Approx(1.256637e7).epsilon(1e-5));
  CHECK(vacuum_wavevector({2 * 2.4797}) == doctest::Approx(2 * vacuum_wavevector({2.4797})).epsilon(1e-15));
}

TEST_CASE("eV <-> omega round trip within 1e-12") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double e = std::pow(10.0, u(rng));
    const double back = omega_to_ev(ev_to_omega({e})).energy_ev;
    CHECK(std::abs(back - e) <= 1e-12 * e);
  }
}
