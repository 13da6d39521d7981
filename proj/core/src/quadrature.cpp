#include "casimir/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir::quad {

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

Rule geometric_panels(double t0, double growth, double t_end, int n) {
  if (!(t0 > 0.0) || !(growth > 1.0) || !(t_end > t0)) throw DomainError("geometric_panels: bad layout");
  const Rule g = gauss_legendre(n);
  Rule r;
  double a = 0.0, b = t0;
  while (true) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
      r.x.push_back(mid + half * g.x[i]);
      r.w.push_back(half * g.w[i]);
    }
    if (b >= t_end) break;
    a = b;
    b *= growth;
  }
  return r;
}

Rule uniform_panels(double a, double b, int count, int n) {
  if (!(b > a) || count < 1) throw DomainError("uniform_panels: bad layout");
  const Rule g = gauss_legendre(n);
  Rule r;
  const double width = (b - a) / count;
  for (int p = 0; p < count; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width, mid = lo + half;
    for (int i = 0; i < n; ++i) {
      r.x.push_back(mid + half * g.x[i]);
      r.w.push_back(half * g.w[i]);
    }
  }
  return r;
}

}  // namespace casimir::quad
