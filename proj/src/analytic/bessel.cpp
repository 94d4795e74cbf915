#include "ldoskit/analytic/bessel.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ldoskit::analytic {

namespace {

using cld = std::complex<long double>;

static_assert(std::numeric_limits<long double>::max_exponent10 >= 1000,
              "the sphere series needs an extended exponent range for long double");

// psi_l(x) = x j_l(x) for l = 0..l_max via the downward recurrence of
// r_l = j_l / j_{l-1}, then an upward product from j_0 = sin(x)/x.
std::vector<cld> riccati_psi(int l_max, cld x) {
  std::vector<cld> psi(l_max + 1);
  if (x == cld(0)) {
    psi.assign(l_max + 1, cld(0));
    return psi;
  }
  const int start = l_max + 30 + static_cast<int>(2.0L * std::abs(x));
  std::vector<cld> ratio(l_max + 2);
  cld r = x / static_cast<long double>(2 * start + 3);
  for (int l = start; l >= 1; --l) {
    r = cld(1) / (static_cast<long double>(2 * l + 1) / x - r);
    if (l <= l_max + 1) ratio[l] = r;
  }
  psi[0] = std::sin(x);
  cld j = std::sin(x) / x;
  for (int l = 1; l <= l_max; ++l) {
    j *= ratio[l];
    psi[l] = x * j;
  }
  return psi;
}

// chi_l(x) = x y_l(x), stable upward.
std::vector<cld> riccati_chi(int l_max, cld x) {
  std::vector<cld> chi(l_max + 1);
  cld prev = std::sin(x);   // chi_{-1}
  cld cur = -std::cos(x);   // chi_0
  chi[0] = cur;
  for (int l = 0; l < l_max; ++l) {
    cld next = static_cast<long double>(2 * l + 1) / x * cur - prev;
    prev = cur;
    cur = next;
    chi[l + 1] = cur;
  }
  return chi;
}

// xi_l(x) = x h1_l(x) directly upward from xi_{-1} = e^{ix}, xi_0 = -i e^{ix}.
std::vector<cld> riccati_xi_direct(int l_max, cld x) {
  const cld I(0, 1);
  std::vector<cld> xi(l_max + 1);
  cld prev = std::exp(I * x);
  cld cur = -I * prev;
  xi[0] = cur;
  for (int l = 0; l < l_max; ++l) {
    cld next = static_cast<long double>(2 * l + 1) / x * cur - prev;
    prev = cur;
    cur = next;
    xi[l + 1] = cur;
  }
  return xi;
}

}  // namespace

RiccatiTable riccati_table(int l_max, std::complex<long double> x) {
  if (l_max < 0) throw std::domain_error("riccati_table: l_max must be >= 0");
  const cld I(0, 1);
  RiccatiTable t;
  t.x = x;
  t.psi = riccati_psi(l_max, x);
  t.dpsi.resize(l_max + 1);
  t.xi.resize(l_max + 1);
  t.dxi.resize(l_max + 1);

  if (x == cld(0)) {
    t.dpsi.assign(l_max + 1, cld(0));
    t.dpsi[0] = cld(1);
    const auto inf = std::numeric_limits<long double>::infinity();
    t.xi.assign(l_max + 1, cld(inf, inf));
    t.dxi.assign(l_max + 1, cld(inf, inf));
    return t;
  }

  // Adding psi to an upward chi loses psi when h1 decays (large Im x); the
  // direct xi recurrence is exact there but drops psi's contribution for real
  // x at high l. Pick per regime.
  if (x.imag() > 1.0L) {
    t.xi = riccati_xi_direct(l_max, x);
  } else {
    auto chi = riccati_chi(l_max, x);
    for (int l = 0; l <= l_max; ++l) t.xi[l] = t.psi[l] + I * chi[l];
  }

  t.dpsi[0] = std::cos(x);
  t.dxi[0] = std::exp(I * x);
  for (int l = 1; l <= l_max; ++l) {
    const long double fl = static_cast<long double>(l);
    t.dpsi[l] = t.psi[l - 1] - fl * t.psi[l] / x;
    t.dxi[l] = t.xi[l - 1] - fl * t.xi[l] / x;
  }
  return t;
}

SphericalBesselValue spherical_bessel(BesselKind kind, int l, std::complex<double> x) {
  if (l < 0) throw std::domain_error("spherical_bessel: order must be >= 0");
  if (kind == BesselKind::h1 && x == std::complex<double>(0.0)) {
    throw std::domain_error("spherical_bessel: h1 is singular at x = 0");
  }
  const cld xl(x.real(), x.imag());
  const auto t = riccati_table(l, xl);

  cld u, du, z;
  if (kind == BesselKind::j) {
    u = t.psi[l];
    du = t.dpsi[l];
    z = (x == std::complex<double>(0.0)) ? cld(l == 0 ? 1 : 0) : u / xl;
  } else {
    u = t.xi[l];
    du = t.dxi[l];
    z = u / xl;
  }

  auto narrow = [&](cld v) {
    const long double big = DBL_MAX;
    if (!(std::abs(v.real()) <= big && std::abs(v.imag()) <= big)) {
      throw std::overflow_error("spherical_bessel: l = " + std::to_string(l) + " at |x| = " +
                                std::to_string(std::abs(x)) + " overflows double precision");
    }
    return std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  };
  return {narrow(z), narrow(u), narrow(du)};
}

}  // namespace ldoskit::analytic
