#include "ldoskit/analytic/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ldoskit/analytic/bessel.hpp"

namespace ldoskit::analytic {

namespace {

using cld = std::complex<long double>;
using cd = std::complex<double>;

enum class Polarization { te, tm };

cld widen(cd v) { return {v.real(), v.imag()}; }
cd narrow(cld v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

struct Mat2 {
  cld a, b, c, d;
};

struct Vec2 {
  cld regular, outgoing;  // amplitudes of psi and xi
};

// Rows: (r E_tan, r H_tan) up to common factors. TE: (u/k, u'), TM: (u'/k, u).
Mat2 matching(Polarization p, cld k, const RiccatiTable& t, int l) {
  if (p == Polarization::te) return {t.psi[l] / k, t.xi[l] / k, t.dpsi[l], t.dxi[l]};
  return {t.dpsi[l] / k, t.dxi[l] / k, t.psi[l], t.xi[l]};
}

Vec2 apply(const Mat2& m, const Vec2& v) {
  return {m.a * v.regular + m.b * v.outgoing, m.c * v.regular + m.d * v.outgoing};
}

Vec2 solve(const Mat2& m, const Vec2& rhs, int l, Frequency e) {
  const cld det = m.a * m.d - m.b * m.c;
  const long double scale = std::max({std::abs(m.a * m.d), std::abs(m.b * m.c), 1e-4000L});
  if (!(std::abs(det) > 1e-14L * scale) || !std::isfinite(std::abs(det))) {
    throw std::runtime_error("singular interface matching matrix at l = " + std::to_string(l) +
                             ", " + std::to_string(e.energy_ev) + " eV");
  }
  return {(m.d * rhs.regular - m.b * rhs.outgoing) / det,
          (-m.c * rhs.regular + m.a * rhs.outgoing) / det};
}

Vec2 normalized(Vec2 v) {
  const long double s = std::max(std::abs(v.regular), std::abs(v.outgoing));
  if (s > 0.0L && std::isfinite(s)) {
    v.regular /= s;
    v.outgoing /= s;
  }
  return v;
}

// Riccati tables for every argument the recursion touches at one energy.
struct StackWork {
  int source_layer = 0;
  int layers = 0;
  double k0 = 0.0;
  std::vector<cld> k;                  // per layer, 1/m
  std::vector<RiccatiTable> inner_at;  // k_m R_m
  std::vector<RiccatiTable> outer_at;  // k_{m+1} R_m
  RiccatiTable observation;            // k_f r_d
};

StackWork prepare(const SphereStack& s, Frequency e, int l_max) {
  s.validate();
  StackWork w;
  w.source_layer = s.source_layer();
  w.layers = static_cast<int>(s.media.size());
  w.k0 = vacuum_wavevector(e);
  for (const auto& m : s.media) w.k.push_back(widen(w.k0 * refractive_index(m, e)));
  for (std::size_t i = 0; i < s.radii.size(); ++i) {
    const long double r = s.radii[i].meters();
    w.inner_at.push_back(riccati_table(l_max, w.k[i] * r));
    w.outer_at.push_back(riccati_table(l_max, w.k[i + 1] * r));
  }
  w.observation = riccati_table(l_max, w.k[w.source_layer] * static_cast<long double>(s.source_radius.meters()));
  return w;
}

std::pair<cld, cld> layer_reflection(const StackWork& w, Polarization p, int l, Frequency e) {
  const int f = w.source_layer;
  cld inner(0), outer(0);
  if (f > 0) {
    Vec2 v{cld(1), cld(0)};
    for (int m = 0; m < f; ++m) {
      const Vec2 rhs = apply(matching(p, w.k[m], w.inner_at[m], l), v);
      v = normalized(solve(matching(p, w.k[m + 1], w.outer_at[m], l), rhs, l, e));
    }
    inner = v.outgoing / v.regular;
  }
  if (f < w.layers - 1) {
    Vec2 v{cld(0), cld(1)};
    for (int m = w.layers - 2; m >= f; --m) {
      const Vec2 rhs = apply(matching(p, w.k[m + 1], w.outer_at[m], l), v);
      v = normalized(solve(matching(p, w.k[m], w.inner_at[m], l), rhs, l, e));
    }
    outer = v.regular / v.outgoing;
  }
  return {inner, outer};
}

// Scattered part of u_<(x) u_>(x) / W relative to the homogeneous psi xi.
cld scattered_product(cld inner, cld outer, cld psi, cld xi) {
  return (inner * xi * xi + outer * psi * psi + 2.0L * inner * outer * psi * xi) /
         (1.0L - inner * outer);
}

cd order_term(const StackWork& w, const StackReflection& r, DipoleOrientation o, int l) {
  const auto& t = w.observation;
  const cld x = t.x;
  const cld kf = w.k[w.source_layer];
  const cld pref = static_cast<long double>(w.k0 * w.k0) * cld(0, 1) * kf /
                   static_cast<long double>(4.0 * constants::pi);
  const long double fl = l;
  cld term;
  if (o == DipoleOrientation::tangential) {
    const cld te = scattered_product(r.te_inner, r.te_outer, t.psi[l], t.xi[l]);
    const cld tm = scattered_product(r.tm_inner, r.tm_outer, t.dpsi[l], t.dxi[l]);
    term = pref * (0.5L * (2 * fl + 1)) * (te + tm) / (x * x);
  } else {
    const cld tm = scattered_product(r.tm_inner, r.tm_outer, t.psi[l], t.xi[l]);
    term = pref * ((2 * fl + 1) * fl * (fl + 1)) * tm / (x * x * x * x);
  }
  return narrow(term);
}

StackReflection reflection(const StackWork& w, int l, Frequency e) {
  StackReflection r;
  std::tie(r.te_inner, r.te_outer) = layer_reflection(w, Polarization::te, l, e);
  std::tie(r.tm_inner, r.tm_outer) = layer_reflection(w, Polarization::tm, l, e);
  return r;
}

}  // namespace

void SphereStack::validate() const {
  if (media.size() != radii.size() + 1) {
    throw std::invalid_argument("sphere stack needs exactly one more medium than radii");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i].nanometers > 0.0)) throw std::invalid_argument("stack radii must be positive");
    if (i > 0 && !(radii[i].nanometers > radii[i - 1].nanometers)) {
      throw std::invalid_argument("stack radii must be strictly ascending");
    }
    if (source_radius.nanometers == radii[i].nanometers) {
      throw std::invalid_argument("emitter lies exactly on an interface");
    }
  }
  if (!(source_radius.nanometers >= 0.0)) throw std::invalid_argument("emitter radius must be >= 0");
}

int SphereStack::source_layer() const {
  int f = 0;
  for (const auto& r : radii) {
    if (source_radius.nanometers > r.nanometers) ++f;
  }
  return f;
}

StackReflection stack_coefficients(const SphereStack& s, int l, Frequency e) {
  if (l < 1) throw std::domain_error("stack_coefficients: multipole order must be >= 1");
  const auto w = prepare(s, e, l);
  return reflection(w, l, e);
}

std::vector<cd> scattered_gf_terms(const SphereStack& s, Frequency e, int l_max) {
  if (s.source_radius.nanometers == 0.0) {
    throw std::domain_error("scattered_gf_terms: use real_cavity_gf_center for r_d = 0");
  }
  const auto w = prepare(s, e, l_max);
  std::vector<cd> out;
  out.reserve(l_max);
  for (int l = 1; l <= l_max; ++l) out.push_back(order_term(w, reflection(w, l, e), s.orientation, l));
  return out;
}

cd scattered_gf(const SphereStack& s, Frequency e, SeriesInfo* info) {
  if (s.source_radius.nanometers == 0.0) {
    throw std::domain_error("scattered_gf: use real_cavity_gf_center for r_d = 0");
  }
  const auto w = prepare(s, e, kSeriesHardCap);
  cd sum(0.0, 0.0);
  int quiet = 0;
  double last_rel = 0.0;
  for (int l = 1; l <= kSeriesHardCap; ++l) {
    const cd term = order_term(w, reflection(w, l, e), s.orientation, l);
    sum += term;
    last_rel = std::abs(sum) > 0.0 ? std::abs(term) / std::abs(sum) : (term == cd(0.0) ? 0.0 : 1.0);
    quiet = last_rel < 1e-8 ? quiet + 1 : 0;
    if (quiet == 3) {
      if (info) *info = {l, last_rel};
      return sum;
    }
  }
  throw ConvergenceError("scattered_gf: series not converged by l = " +
                             std::to_string(kSeriesHardCap) + " (last relative term " +
                             std::to_string(last_rel) + ")",
                         last_rel);
}

double total_ldos_outside(const SphereStack& s, Frequency e) {
  s.validate();
  if (s.source_layer() != static_cast<int>(s.media.size()) - 1) {
    throw std::domain_error("total_ldos_outside: emitter must be in the background layer");
  }
  const auto n_bg = refractive_index(s.media.back(), e);
  if (n_bg.imag() != 0.0) throw std::domain_error("total_ldos_outside: background must be lossless");
  if (s.radii.empty()) return n_bg.real();
  return n_bg.real() + scattered_gf(s, e).imag() / vacuum_im_green(e);
}

GreenSample real_cavity_gf_center(const SphereStack& s, Frequency e) {
  s.validate();
  const auto n_core = refractive_index(s.media.front(), e);
  if (n_core.imag() != 0.0) {
    throw std::domain_error("real_cavity_gf_center: the cavity medium must be lossless");
  }
  const double k0 = vacuum_wavevector(e);
  const double kc = k0 * n_core.real();
  cld outer(0);
  if (!s.radii.empty()) {
    SphereStack centred = s;
    centred.source_radius = Length{0.0};
    const auto w = prepare(centred, e, 1);
    outer = layer_reflection(w, Polarization::tm, 1, e).second;
  }
  // At the centre only l = 1 TM survives: psi_1'(x)^2 / x^2 -> 4/9, so
  // G^scatt = i k0^2 kc R_out / (6 pi).
  const cd r = narrow(outer);
  const double scale = k0 * k0 * kc / (6.0 * constants::pi);
  const cd g(-scale * r.imag(), scale * (1.0 + r.real()));
  return GreenSample::from_green(e, g);
}

Length equal_volume_radius(Length delta) {
  return {delta.nanometers * std::cbrt(3.0 / (4.0 * constants::pi))};
}

}  // namespace ldoskit::analytic
