#include "casimir/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

double LogScaled::value() const {
  if (sign == 0) return 0.0;
  // exp overflows just above 709.78
  if (ln_abs > 709.7) throw std::overflow_error("LogScaled value exceeds double range");
  return sign * std::exp(ln_abs);
}

LogScaled operator+(LogScaled a, LogScaled b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.ln_abs < b.ln_abs) std::swap(a, b);
  const double r = std::exp(b.ln_abs - a.ln_abs);
  const double s = (a.sign == b.sign) ? 1.0 + r : 1.0 - r;
  if (s == 0.0) return {};
  return {a.sign, a.ln_abs + std::log(s)};
}

double relative_difference(LogScaled a, LogScaled b) {
  if (b.sign == 0) return a.sign == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (a.sign != b.sign) return 1.0 + std::exp(a.ln_abs - b.ln_abs);
  return std::fabs(std::expm1(a.ln_abs - b.ln_abs));
}

namespace special {

namespace {

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// Neumaier summation
class CompensatedSum {
 public:
  explicit CompensatedSum(double first) : sum_(first) {}
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      c_ += (sum_ - t) + v;
    } else {
      c_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_;
  double c_ = 0.0;
};

// I_{nu+1}(x)/I_nu(x) via the continued fraction
// 1/(2(nu+1)/x + 1/(2(nu+2)/x + ...)), evaluated with modified Lentz.
double i_ratio_continued_fraction(double nu, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 10'000'000; ++k) {
    const double b = 2.0 * (nu + k) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return f;
}

}  // namespace

HalfOrderBessel half_order_bessel(int l_max, double x) {
  require_positive(x, "half_order_bessel");
  if (l_max < 0) throw DomainError("half_order_bessel: negative order");

  HalfOrderBessel t;
  t.x = x;
  const auto n = static_cast<std::size_t>(l_max) + 1;
  t.ln_i.resize(n);
  t.ln_k.resize(n);
  t.i_ratio.resize(n);
  t.k_ratio.resize(n);

  // Both chains are accumulated on the exponentially scaled logs
  // ln(e^x I) -> ln I - x and ln(e^{-x} K) -> ln K + x with compensated
  // summation; the scaled values stay O(l ln l) instead of O(x).
  t.ln_i_scaled.resize(n);
  t.ln_k_scaled.resize(n);

  // K: upward, stable.
  t.k_ratio[0] = 1.0 + 1.0 / x;
  for (int l = 1; l <= l_max; ++l) t.k_ratio[l] = (2.0 * l + 1.0) / x + 1.0 / t.k_ratio[l - 1];
  {
    CompensatedSum acc(0.5 * std::log(std::numbers::pi / (2.0 * x)));
    t.ln_k_scaled[0] = acc.value();
    for (int l = 1; l <= l_max; ++l) {
      acc.add(std::log(t.k_ratio[l - 1]));
      t.ln_k_scaled[l] = acc.value();
    }
  }

  // I: ratios downward from the top order, then chain up from I_{1/2}.
  t.i_ratio[l_max] = i_ratio_continued_fraction(l_max + 0.5, x);
  for (int l = l_max - 1; l >= 0; --l) {
    t.i_ratio[l] = 1.0 / ((2.0 * l + 3.0) / x + t.i_ratio[l + 1]);
  }
  {
    // e^{-x} sinh x = (1 - e^{-2x}) / 2
    CompensatedSum acc(0.5 * std::log(2.0 / (std::numbers::pi * x)));
    acc.add(std::log(-std::expm1(-2.0 * x)) - std::numbers::ln2);
    t.ln_i_scaled[0] = acc.value();
    for (int l = 1; l <= l_max; ++l) {
      acc.add(std::log(t.i_ratio[l - 1]));
      t.ln_i_scaled[l] = acc.value();
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    t.ln_i[l] = t.ln_i_scaled[l] + x;
    t.ln_k[l] = t.ln_k_scaled[l] - x;
  }
  return t;
}

LogScaled bessel_i_half(int l, double x) {
  require_positive(x, "bessel_i_half");
  return LogScaled::from_log(half_order_bessel(l, x).ln_i[l]);
}

LogScaled bessel_k_half(int l, double x) {
  require_positive(x, "bessel_k_half");
  return LogScaled::from_log(half_order_bessel(l, x).ln_k[l]);
}

LogScaled bessel_i_half_prime(int l, double x) {
  require_positive(x, "bessel_i_half_prime");
  const auto t = half_order_bessel(l, x);
  // I'_nu = I_{nu+1} + (nu/x) I_nu
  return LogScaled::from_log(t.ln_i[l] + std::log(t.x_log_derivative_i(l) / x));
}

LogScaled bessel_k_half_prime(int l, double x) {
  require_positive(x, "bessel_k_half_prime");
  const auto t = half_order_bessel(l, x);
  // K'_nu = -K_{nu+1} + (nu/x) K_nu
  return LogScaled::from_log(t.ln_k[l] + std::log(-t.x_log_derivative_k(l) / x), -1);
}

// ---------------------------------------------------------------------------
// Wigner 3j

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void rescale(std::vector<double>& v, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) v[i] *= kRescaleBy;
}

void normalize_3j(std::vector<double>& f, int jmin, int sign_at_jmax) {
  double norm = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) norm += (2.0 * (jmin + static_cast<int>(k)) + 1.0) * f[k] * f[k];
  double s = 1.0 / std::sqrt(norm);
  if ((f.back() < 0.0 ? -1 : 1) != sign_at_jmax) s = -s;
  for (double& v : f) v *= s;
}

}  // namespace

void wigner3j_m_range(int l1, int l2, int m, std::vector<double>& out) {
  const int jmin = std::abs(l1 - l2);
  const int jmax = l1 + l2;
  const auto n = static_cast<std::size_t>(jmax - jmin + 1);
  out.assign(n, 0.0);
  if (l1 < 0 || l2 < 0 || std::abs(m) > std::min(l1, l2)) return;

  const int sign_at_jmax = ((l1 - l2) % 2 == 0) ? 1 : -1;
  if (n == 1) {
    out[0] = sign_at_jmax / std::sqrt(2.0 * jmin + 1.0);
    return;
  }

  const double dl = static_cast<double>(l1 - l2);
  const double sl = static_cast<double>(l1 + l2 + 1);
  // A(j)/j, tabulated once: the m3 = 0 factor sqrt(j^2) is pulled out below.
  thread_local std::vector<double> ptab, g;
  ptab.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double jj = static_cast<double>(jmin + static_cast<int>(k));
    ptab[k] = std::sqrt((jj * jj - dl * dl) * (sl * sl - jj * jj));
  }
  auto p = [&](int j) { return ptab[static_cast<std::size_t>(j - jmin)]; };
  auto a = [&](int j) { return j * p(j); };
  auto b = [&](int j) {
    const double jj = static_cast<double>(j);
    return -2.0 * m * (2.0 * jj + 1.0) * jj * (jj + 1.0);
  };

  if (m == 0) {
    // Only l1+l2+l3 even survives; two-step first-order recursion.
    out[0] = 1.0;
    for (int j = jmin; j + 2 <= jmax; j += 2) {
      const auto k = static_cast<std::size_t>(j - jmin);
      out[k + 2] = -out[k] * p(j + 1) / p(j + 2);
    }
    normalize_3j(out, jmin, sign_at_jmax);
    return;
  }

  // Forward from jmin through the left non-classical region.
  std::vector<double>& f = out;
  f[0] = 1.0;
  if (jmin == 0) {
    // (l l 1; m -m 0) / (l l 0; m -m 0) = m / sqrt(l (l+1))
    f[1] = m / std::sqrt(static_cast<double>(l1) * (l1 + 1.0));
  } else {
    f[1] = -b(jmin) / (jmin * a(jmin + 1)) * f[0];
  }
  int jmid = jmin + 1;
  if (std::fabs(f[1]) > std::fabs(f[0])) {
    for (int j = jmin + 1; j < jmax; ++j) {
      const auto k = static_cast<std::size_t>(j - jmin);
      f[k + 1] = -(b(j) * f[k] + (j + 1.0) * a(j) * f[k - 1]) / (j * a(j + 1));
      jmid = j + 1;
      if (std::fabs(f[k + 1]) > kRescaleAbove) rescale(f, 0, k + 2);
      if (std::fabs(f[k + 1]) <= std::fabs(f[k])) break;
    }
  }
  // f is trusted on [jmin, jmid]; match at jmid-1 and jmid.
  const int jmatch = std::max(jmid - 1, jmin);

  {
    g.assign(n, 0.0);
    g[n - 1] = 1.0;
    g[n - 2] = -b(jmax) / ((jmax + 1.0) * a(jmax)) * g[n - 1];
    for (int j = jmax - 1; j > jmatch; --j) {
      const auto k = static_cast<std::size_t>(j - jmin);
      g[k - 1] = -(j * a(j + 1) * g[k + 1] + b(j) * g[k]) / ((j + 1.0) * a(j));
      if (std::fabs(g[k - 1]) > kRescaleAbove) rescale(g, k - 1, n);
    }
    const auto k0 = static_cast<std::size_t>(jmatch - jmin);
    const auto k1 = static_cast<std::size_t>(jmid - jmin);
    double num = f[k0] * g[k0];
    double den = g[k0] * g[k0];
    if (k1 != k0) {
      num += f[k1] * g[k1];
      den += g[k1] * g[k1];
    }
    const double scale = num / den;
    for (std::size_t k = k0 + 1; k < n; ++k) f[k] = scale * g[k];
  }
  normalize_3j(f, jmin, sign_at_jmax);
}

double wigner3j_m(int l1, int l2, int l3, int m) {
  if (l1 < 0 || l2 < 0 || l3 < 0) return 0.0;
  if (std::abs(m) > std::min(l1, l2)) return 0.0;
  if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;
  if (m == 0 && (l1 + l2 + l3) % 2 != 0) return 0.0;
  std::vector<double> v;
  wigner3j_m_range(l1, l2, m, v);
  return v[static_cast<std::size_t>(l3 - std::abs(l1 - l2))];
}

double wigner3j_zero(int l1, int l2, int l3) { return wigner3j_m(l1, l2, l3, 0); }

// ---------------------------------------------------------------------------
// Debye

double DebyeCoefficients::eta(double z) {
  const double s = std::sqrt(1.0 + z * z);
  return s + std::log(z / (1.0 + s));
}

double DebyeCoefficients::u1(double z) {
  const double q = 1.0 + z * z;
  return (1.0 / std::sqrt(q)) * (1.0 / 8.0 - 5.0 / (24.0 * q));
}

double DebyeCoefficients::m1(double c, double z) {
  const double q = 1.0 + z * z;
  return (1.0 / std::sqrt(q)) * (c - 3.0 / 8.0 + 7.0 / (24.0 * q));
}

LogScaled debye_bessel_i_half(int l, double x) {
  require_positive(x, "debye_bessel_i_half");
  const double nu = l + 0.5;
  const double z = x / nu;
  const double ln_lead = nu * DebyeCoefficients::eta(z) - 0.5 * std::log(2.0 * std::numbers::pi * nu) -
                         0.25 * std::log1p(z * z);
  return LogScaled::from_log(ln_lead + std::log1p(DebyeCoefficients::u1(z) / nu));
}

double debye_validate(int l, double x) {
  return relative_difference(debye_bessel_i_half(l, x), bessel_i_half(l, x));
}

}  // namespace special
}  // namespace casimir
