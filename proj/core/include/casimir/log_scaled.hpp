#pragma once

#include <cmath>
#include <limits>

namespace casimir {

/// A real number stored as sign and natural log of its magnitude.
///
/// Bessel functions of large order and the matrix elements built from them
/// routinely leave the double exponent range, so every kernel in the library
/// hands values around in this form and only materializes plain doubles at
/// the last step.
struct LogScaled {
  int sign = 0;         // -1, 0 or +1
  double ln_abs = 0.0;  // ignored when sign == 0

  static LogScaled zero() { return {}; }
  static LogScaled from_log(double ln_abs, int sign = 1) { return {sign, ln_abs}; }
  static LogScaled from_double(double v) {
    if (v == 0.0) return {};
    return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }

  /// Plain value; throws std::overflow_error if the magnitude is not
  /// representable as a finite double.
  double value() const;

  /// Plain value, with overflow mapped to +/-inf and underflow to 0.
  double value_unchecked() const {
    return sign == 0 ? 0.0 : sign * std::exp(ln_abs);
  }

  LogScaled operator-() const { return {-sign, ln_abs}; }
};

inline LogScaled operator*(LogScaled a, LogScaled b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.ln_abs + b.ln_abs};
}

inline LogScaled operator/(LogScaled a, LogScaled b) {
  if (b.sign == 0) return {a.sign == 0 ? 0 : a.sign, std::numeric_limits<double>::infinity()};
  if (a.sign == 0) return {};
  return {a.sign * b.sign, a.ln_abs - b.ln_abs};
}

/// Two-term log-sum-exp with signs, shifted by the larger exponent.
LogScaled operator+(LogScaled a, LogScaled b);
inline LogScaled operator-(LogScaled a, LogScaled b) { return a + (-b); }

inline LogScaled& operator*=(LogScaled& a, LogScaled b) { return a = a * b; }
inline LogScaled& operator+=(LogScaled& a, LogScaled b) { return a = a + b; }

/// Relative difference |a/b - 1|, evaluated without leaving log space.
double relative_difference(LogScaled a, LogScaled b);

}  // namespace casimir
