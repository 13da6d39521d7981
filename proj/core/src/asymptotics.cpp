#include "casimir/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/pfa.hpp"

namespace casimir::asym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kPi3 = kPi2 * kPi;

// Per-sphere coefficient of d / r_C in the energy bracket.
double sphere_coef(const BoundaryPair& pair, const Condition& c) {
  const bool sym = pair.is_symmetric();
  if (pair.field == FieldType::EM) return sym ? 1.0 / 3.0 - 20.0 / kPi2 : 1.0 / 3.0 - 80.0 / (7.0 * kPi2);
  if (c.kind == Condition::Kind::Dirichlet) return 1.0 / 3.0;
  const double robin = 3.0 * c.alpha - 2.0;
  return sym ? 1.0 / 3.0 + 20.0 / kPi2 * robin : 1.0 / 3.0 + 80.0 / (7.0 * kPi2) * robin;
}

// Leading T = 0 energy with r_A r_B / R folded into rr.
double leading_energy(const BoundaryPair& pair, double rr, double d) {
  const double em = pair.field == FieldType::EM ? 2.0 : 1.0;
  const double base = kPi3 * rr / (1440.0 * d * d);
  return em * (pair.is_symmetric() ? -base : 7.0 / 8.0 * base);
}

double gap_radius(const Geometry& g) { return g.mode == Mode::Interior ? g.r_B - g.r_A : g.r_A + g.r_B; }

void finish(ExpansionResult& r, const Geometry& g) {
  const double d = g.d();
  const double R = gap_radius(g);
  r.ntl_coefficient = r.gap_coef * g.r_A / R + r.a_coef + r.b_coef * g.r_A / g.r_B;
  // The two sphere terms are added first so that swapping A and B is exact.
  r.value = r.leading * (1.0 + r.gap_coef * d / R + (r.a_coef * d / g.r_A + r.b_coef * d / g.r_B));
  r.validity_hint = d / std::min(g.r_A, g.r_B);
}

}  // namespace

ExpansionResult energy_asym_T0(const Geometry& g, const BoundaryPair& pair) {
  g.validate();
  pair.validate();
  const double s = g.mode == Mode::Interior ? 1.0 : -1.0;
  ExpansionResult r;
  r.leading = leading_energy(pair, g.r_A * g.r_B / gap_radius(g), g.d());
  r.gap_coef = s;
  r.a_coef = sphere_coef(pair, pair.cond_A);
  r.b_coef = -s * sphere_coef(pair, pair.cond_B);
  finish(r, g);
  return r;
}

ExpansionResult force_asym_T0(const Geometry& g, const BoundaryPair& pair) {
  ExpansionResult r = energy_asym_T0(g, pair);
  r.leading *= 2.0 / g.d();
  r.gap_coef *= 0.5;
  r.a_coef *= 0.5;
  r.b_coef *= 0.5;
  finish(r, g);
  return r;
}

ExpansionResult sphere_plane_limit(const BoundaryPair& pair, double r_A, double d) {
  pair.validate();
  if (!(r_A > 0.0) || !(d > 0.0)) throw ValidationError("sphere_plane_limit: r_A and d must be positive");
  ExpansionResult r;
  r.leading = leading_energy(pair, r_A, d);
  r.a_coef = sphere_coef(pair, pair.cond_A);
  r.ntl_coefficient = r.a_coef;
  r.value = r.leading * (1.0 + r.a_coef * d / r_A);
  r.validity_hint = d / r_A;
  return r;
}

double free_energy_leading(const Geometry& g, const BoundaryPair& pair, double T) {
  g.validate();
  pair.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("free_energy_leading: T must be non-negative");
  const double d = g.d();
  const double rr = g.r_A * g.r_B / gap_radius(g);
  if (T == 0.0) return leading_energy(pair, rr, d);

  const bool sym = pair.is_symmetric();
  const double em = pair.field == FieldType::EM ? 2.0 : 1.0;
  const double c = 2.0 * kPi * d * T;
  double sum = 0.0;
  if (c < 1e-5) {
    // The exponential sum would need ~20 / c terms; the polynomial part of the
    // PFA temperature function is exact to e^{-pi / (2 d T)} here.
    const double x = 2.0 * d * T;
    const double h = sym ? 5.0 * x * x - 90.0 * pfa::kZeta3 * x * x * x / kPi3 + x * x * x * x
                         : 20.0 / 7.0 * x * x - 8.0 / 7.0 * x * x * x * x;
    return leading_energy(pair, rr, d) * (1.0 + h);
  }
  // coth(y) = 1 + 2 / (e^{2y} - 1): the constant part sums to zeta(3) or
  // -(3/4) zeta(3), the rest decays like e^{-2ck}.
  double tail = 0.0;
  for (int k = 1;; ++k) {
    const double y = c * k;
    const double e = std::exp(-2.0 * y);
    if (e == 0.0) break;
    const double term = 2.0 * e / (-std::expm1(-2.0 * y) * k * static_cast<double>(k) * k);
    tail += (!sym && k % 2 == 1) ? -term : term;
    if (term < 1e-18 * std::fabs(tail)) break;
  }
  sum = (sym ? pfa::kZeta3 : -0.75 * pfa::kZeta3) + tail;
  return -em * rr * T * sum / (8.0 * d);
}

CcForceCoefficients cc_force_coefficients() {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.01, Mode::Interior);
  const ExpansionResult f = force_asym_T0(g, BoundaryPair::em(Condition::pec(), Condition::pec()));
  return {2.0 * f.gap_coef, -2.0 * f.a_coef, 2.0 * f.b_coef};
}

}  // namespace casimir::asym
