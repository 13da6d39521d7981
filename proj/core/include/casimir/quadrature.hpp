#pragma once

#include <vector>

namespace casimir::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
Rule gauss_legendre(int n);

/// Gauss-Legendre with n points on each panel [0, t0], [t0, g t0],
/// [g t0, g^2 t0], ... until the panel end reaches t_end.
Rule geometric_panels(double t0, double growth, double t_end, int n);

/// Gauss-Legendre with n points on each of `count` equal panels of [a, b].
Rule uniform_panels(double a, double b, int count, int n);

}  // namespace casimir::quad
