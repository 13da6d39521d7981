#include "casimir/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::pfa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;

// Below these x the h and g functions are their polynomial parts.
constexpr double kSymmetricPolyBelow = 0.1;
constexpr double kAlternatingPolyBelow = 0.08;

// sum_k s_k 2 / ((e^{2y} - 1) y^3) and sum_k s_k / (y^2 sinh^2 y), y = pi k x,
// s_k = 1 or (-1)^{k-1}.
struct ExpSums {
  double coth_part = 0.0;
  double sinh_part = 0.0;
};

ExpSums exp_sums(double x, bool alternating) {
  ExpSums s;
  for (int k = 1;; ++k) {
    const double y = kPi * k * x;
    const double e = std::exp(-2.0 * y);
    if (e == 0.0) break;
    const double one_minus = -std::expm1(-2.0 * y);
    const double sign = (alternating && k % 2 == 0) ? -1.0 : 1.0;
    const double tc = 2.0 * e / (one_minus * y * y * y);
    const double ts = 4.0 * e / (one_minus * one_minus * y * y);
    s.coth_part += sign * tc;
    s.sinh_part += sign * ts;
    if (tc + ts < 1e-18 * (std::fabs(s.coth_part) + std::fabs(s.sinh_part))) break;
  }
  return s;
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(name) + ": x must be positive");
}

double reflection(double beta, double alpha, double x) { return (beta * x - alpha) / (beta * x + alpha); }

// ln(1 - rho e^{-t}) without losing the small-t behaviour when rho is near 1.
double ln_one_minus(double rho, double t) {
  const double arg = -std::expm1(-t) + (1.0 - rho) * std::exp(-t);
  if (!(arg > 0.0)) throw DomainError("plate_free_energy_density: reflection product exceeds one");
  return std::log(arg);
}

const quad::Rule& t_rule() {
  static const quad::Rule rule = quad::geometric_panels(1e-3, 2.0, 64.0, 16);
  return rule;
}

struct Closed {
  double rr;  // r_A r_B / R
  double d;
  bool symmetric;
  double em;
};

Closed closed_setup(const Geometry& g, const BoundaryPair& pair) {
  g.validate();
  pair.validate();
  const double R = g.mode == Mode::Interior ? g.r_B - g.r_A : g.r_A + g.r_B;
  return {g.r_A * g.r_B / R, g.d(), pair.is_symmetric(), pair.field == FieldType::EM ? 2.0 : 1.0};
}

}  // namespace

void PlatePair::validate() const {
  for (double v : {beta_A, alpha_A, beta_B, alpha_B}) {
    if (!std::isfinite(v)) throw ValidationError("PlatePair: non-finite Robin data");
  }
  if (beta_A == 0.0 && alpha_A == 0.0) throw ValidationError("PlatePair: plate A has beta = alpha = 0");
  if (beta_B == 0.0 && alpha_B == 0.0) throw ValidationError("PlatePair: plate B has beta = alpha = 0");
}

PlatePair plates_for(const Geometry& g, const BoundaryPair& pair) {
  pair.validate();
  if (pair.field != FieldType::Scalar) throw ValidationError("plates_for: scalar pair expected");
  PlatePair p;
  if (pair.cond_A.kind == Condition::Kind::Robin) {
    p.beta_A = 1.0;
    p.alpha_A = pair.cond_A.alpha / g.r_A;
  }
  if (pair.cond_B.kind == Condition::Kind::Robin) {
    p.beta_B = 1.0;
    p.alpha_B = pair.cond_B.alpha / g.r_B;
  }
  return p;
}

double plate_free_energy_density(double d, double T, const PlatePair& plates) {
  if (!(d > 0.0)) throw DomainError("plate_free_energy_density: d must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("plate_free_energy_density: T must be non-negative");
  plates.validate();
  const quad::Rule& rule = t_rule();
  const double scale = 1.0 / (2.0 * d);
  auto rho = [&](double t) {
    const double x = t * scale;
    return reflection(plates.beta_A, plates.alpha_A, x) * reflection(plates.beta_B, plates.alpha_B, x);
  };

  if (T == 0.0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = rule.x[i];
      sum += rule.w[i] * t * t * ln_one_minus(rho(t), t);
    }
    return sum * scale * scale * scale / (4.0 * kPi * kPi);
  }

  const double step = 4.0 * kPi * d * T;
  if (std::log(1e16) / step > 5e6) throw DomainError("plate_free_energy_density: T too small for the Matsubara sum");
  double total = 0.0;
  for (long p = 0;; ++p) {
    const double tp = step * static_cast<double>(p);
    double term = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = tp + rule.x[i];
      term += rule.w[i] * t * ln_one_minus(rho(t), t);
    }
    if (p == 0) term *= 0.5;
    total += term;
    if (p > 0 && std::fabs(term) <= 1e-16 * std::fabs(total)) break;
  }
  return total * T * scale * scale / (2.0 * kPi);
}

double pfa_free_energy(const Geometry& g, const BoundaryPair& pair, double T) {
  g.validate();
  pair.validate();
  PlatePair plates;
  double factor = 1.0;
  if (pair.field == FieldType::EM) {
    factor = 2.0;
    if (!pair.is_symmetric()) plates = {0.0, 1.0, 1.0, 0.0};
  } else {
    plates = plates_for(g, pair);
  }
  const double d = g.d();
  const double u_max = g.mode == Mode::Interior ? g.L + g.r_B - g.r_A : std::sqrt(g.L * g.L - g.r_B * g.r_B) - g.r_A;
  const double span = std::log(u_max / d);
  const double pref = 2.0 * kPi * g.r_B / g.L;

  auto integrate = [&](int panels, int n) {
    const quad::Rule r = quad::uniform_panels(0.0, span, panels, n);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double u = d * std::exp(r.x[i]);
      sum += r.w[i] * (u + g.r_A) * u * plate_free_energy_density(u, T, plates);
    }
    return sum;
  };
  int panels = std::max(2, static_cast<int>(std::ceil(span / 0.5)));
  double coarse = integrate(panels, 8);
  double fine = integrate(panels, 16);
  while (std::fabs(fine - coarse) > 1e-10 * std::fabs(fine) && panels < 4096) {
    panels *= 2;
    coarse = fine;
    fine = integrate(panels, 16);
  }
  return factor * pref * fine;
}

double h_s(double x) {
  require_positive(x, "h_s");
  if (x < kSymmetricPolyBelow) return 5.0 * x * x - 90.0 * kZeta3 * x * x * x / kPi3 + x * x * x * x;
  const ExpSums s = exp_sums(x, false);
  return 90.0 * kZeta3 * x / kPi3 - 1.0 + 90.0 * x * x * x * x * s.coth_part;
}

double g_s(double x) {
  require_positive(x, "g_s");
  if (x < kSymmetricPolyBelow) return 45.0 * kZeta3 * x * x * x / kPi3 - x * x * x * x;
  const ExpSums s = exp_sums(x, false);
  return 45.0 * kZeta3 * x / kPi3 - 1.0 + 45.0 * x * x * x * x * (s.coth_part + s.sinh_part);
}

double h_a(double x) {
  require_positive(x, "h_a");
  if (x < kAlternatingPolyBelow) return 20.0 / 7.0 * x * x - 8.0 / 7.0 * x * x * x * x;
  const ExpSums s = exp_sums(x, true);
  return 540.0 * kZeta3 * x / (7.0 * kPi3) - 1.0 + 720.0 / 7.0 * x * x * x * x * s.coth_part;
}

double g_a(double x) {
  require_positive(x, "g_a");
  if (x < kAlternatingPolyBelow) return 8.0 / 7.0 * x * x * x * x;
  const ExpSums s = exp_sums(x, true);
  return 270.0 * kZeta3 * x / (7.0 * kPi3) - 1.0 + 360.0 / 7.0 * x * x * x * x * (s.coth_part + s.sinh_part);
}

double pfa_closed_small_d(const Geometry& g, const BoundaryPair& pair, double T, Regime regime) {
  if (!(T >= 0.0)) throw DomainError("pfa_closed_small_d: T must be non-negative");
  const Closed c = closed_setup(g, pair);
  const double x = 2.0 * c.d * T;
  if (regime == Regime::Auto) regime = c.d * T > kHighTThreshold ? Regime::HighT : Regime::Auto;
  if (regime == Regime::HighT) {
    if (T == 0.0) throw DomainError("pfa_closed_small_d: high-temperature form needs T > 0");
    const double base = c.rr * T * kZeta3 / c.d;
    return c.em * (c.symmetric ? -base / 8.0 : 3.0 * base / 32.0);
  }
  const double lead = kPi3 * c.rr / (1440.0 * c.d * c.d);
  double corr = 0.0;
  if (T > 0.0) {
    if (regime == Regime::MediumLowPoly) {
      corr = c.symmetric ? 5.0 * x * x - 90.0 * kZeta3 * x * x * x / kPi3 + x * x * x * x
                         : 20.0 / 7.0 * x * x - 8.0 / 7.0 * x * x * x * x;
    } else {
      corr = c.symmetric ? h_s(x) : h_a(x);
    }
  }
  return c.em * (c.symmetric ? -lead : 7.0 / 8.0 * lead) * (1.0 + corr);
}

double pfa_closed_force_small_d(const Geometry& g, const BoundaryPair& pair, double T, Regime regime) {
  if (!(T >= 0.0)) throw DomainError("pfa_closed_force_small_d: T must be non-negative");
  const Closed c = closed_setup(g, pair);
  const double x = 2.0 * c.d * T;
  if (regime == Regime::Auto) regime = c.d * T > kHighTThreshold ? Regime::HighT : Regime::Auto;
  if (regime == Regime::HighT) {
    if (T == 0.0) throw DomainError("pfa_closed_force_small_d: high-temperature form needs T > 0");
    const double base = c.rr * T * kZeta3 / (c.d * c.d);
    return c.em * (c.symmetric ? -base / 8.0 : 3.0 * base / 32.0);
  }
  const double lead = kPi3 * c.rr / (720.0 * c.d * c.d * c.d);
  double corr = 0.0;
  if (T > 0.0) {
    if (regime == Regime::MediumLowPoly) {
      corr = c.symmetric ? 45.0 * kZeta3 * x * x * x / kPi3 - x * x * x * x : 8.0 / 7.0 * x * x * x * x;
    } else {
      corr = c.symmetric ? g_s(x) : g_a(x);
    }
  }
  return c.em * (c.symmetric ? -lead : 7.0 / 8.0 * lead) * (1.0 + corr);
}

}  // namespace casimir::pfa
