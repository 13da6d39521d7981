#pragma once

#include <span>
#include <vector>

#include "casimir/log_scaled.hpp"

namespace casimir::special {

/// Modified Bessel functions I_{l+1/2}(x), K_{l+1/2}(x) for l = 0..l_max,
/// all at one argument, in log form.
///
/// The ratio arrays carry the neighbouring order so derivatives and Robin
/// combinations can be formed without another evaluation:
///   i_ratio[l] = I_{l+3/2}(x) / I_{l+1/2}(x)
///   k_ratio[l] = K_{l+3/2}(x) / K_{l+1/2}(x)
struct HalfOrderBessel {
  double x = 0.0;
  std::vector<double> ln_i;
  std::vector<double> ln_k;
  std::vector<double> ln_i_scaled;  ///< ln(e^{-x} I)
  std::vector<double> ln_k_scaled;  ///< ln(e^{x} K)
  std::vector<double> i_ratio;
  std::vector<double> k_ratio;

  int l_max() const { return static_cast<int>(ln_i.size()) - 1; }

  /// x I'_{l+1/2}(x) / I_{l+1/2}(x)
  double x_log_derivative_i(int l) const { return (l + 0.5) + x * i_ratio[l]; }
  /// x K'_{l+1/2}(x) / K_{l+1/2}(x), always negative
  double x_log_derivative_k(int l) const { return (l + 0.5) - x * k_ratio[l]; }
};

/// Tabulates orders 0..l_max. I comes from a continued fraction at the top
/// order followed by downward ratio recurrence normalized on I_{1/2}; K from
/// upward recurrence seeded by the closed forms of K_{1/2} and K_{3/2}.
/// Throws DomainError unless x > 0 and l_max >= 0.
HalfOrderBessel half_order_bessel(int l_max, double x);

LogScaled bessel_i_half(int l, double x);
LogScaled bessel_k_half(int l, double x);
LogScaled bessel_i_half_prime(int l, double x);
LogScaled bessel_k_half_prime(int l, double x);

/// Wigner 3j symbol (l1 l2 l3; 0 0 0). Zero outside the triangle or for odd
/// l1+l2+l3.
double wigner3j_zero(int l1, int l2, int l3);

/// Wigner 3j symbol (l1 l2 l3; m -m 0). Zero when |m| > min(l1, l2) or the
/// triangle condition fails.
double wigner3j_m(int l1, int l2, int l3, int m);

/// Fills out[k] = (l1 l2 l3; m -m 0) for l3 = |l1-l2| + k, k = 0..l1+l2-|l1-l2|.
/// `out` is resized as needed. Uses the three-term recursion in l3 with
/// two-sided matching and normalization to sum (2 l3 + 1) f^2 = 1.
void wigner3j_m_range(int l1, int l2, int m, std::vector<double>& out);

/// Uniform large-order asymptotics of I_nu(nu z).
struct DebyeCoefficients {
  static double eta(double z);
  static double u1(double z);
  static double m1(double c, double z);
};

/// Two-term Debye approximation of I_{l+1/2}(x), in log form.
LogScaled debye_bessel_i_half(int l, double x);

/// |Debye(I_{l+1/2}(x)) / I_{l+1/2}(x) - 1|.
double debye_validate(int l, double x);

}  // namespace casimir::special
