#pragma once

#include "casimir/geometry.hpp"

namespace casimir::pfa {

inline constexpr double kZeta3 = 1.2020569031595942853998;

/// Robin data of two parallel plates: the field obeys beta d_n phi + alpha phi = 0.
/// Dirichlet is beta = 0, alpha = 1.
struct PlatePair {
  double beta_A = 0.0;
  double alpha_A = 1.0;
  double beta_B = 0.0;
  double alpha_B = 1.0;

  /// Throws ValidationError if a plate has beta = alpha = 0 or non-finite data.
  void validate() const;
};

/// Plate data for a scalar pair: Dirichlet maps to (0, 1), Robin alpha on a
/// sphere of radius r to (1, alpha / r).
PlatePair plates_for(const Geometry& g, const BoundaryPair& pair);

/// Free energy per unit area of two plates at gap d,
///   (T / 2pi) sum'_p int_{xi_p}^inf dx x ln(1 - r_A(x) r_B(x) e^{-2dx}),
/// with r_C(x) = (beta_C x - alpha_C) / (beta_C x + alpha_C). T = 0 uses the
/// frequency integral instead of the sum,
///   (1 / 4pi^2) int_0^inf dx x^2 ln(1 - r_A r_B e^{-2dx}).
double plate_free_energy_density(double d, double T, const PlatePair& plates);

/// Plate density integrated over sphere B with the local gap u = h(theta).
/// Interior: u runs over [d, L + r_B - r_A]; exterior over the visible cap,
/// [d, sqrt(L^2 - r_B^2) - r_A]. Electromagnetic pairs are twice the scalar
/// pair with the same limiting reflection signs (CC, PP -> DD; CP, PC -> DN).
double pfa_free_energy(const Geometry& g, const BoundaryPair& pair, double T);

/// Temperature functions of the sphere-averaged PFA, x = 2 d T:
///   h_s(x) = 90 x^4 sum_k (coth(pi k x) / (pi k x)^3 - 1 / (pi k x)^4)
///   h_a(x) = (720 / 7) x^4 sum_k (-1)^{k-1} (same bracket)
///   g = h - (x / 2) h'
/// Small x uses the polynomial part, which is exact up to terms of order
/// e^{-2 pi / x} (h_s) or e^{-pi / x} (h_a). Throws DomainError for x <= 0.
double h_s(double x);
double g_s(double x);
double h_a(double x);
double g_a(double x);

enum class Regime { Auto, MediumLowPoly, HighT };

/// Small-gap closed forms. Auto takes HighT when d T > 2 and the coth form
/// 1 + h(2 d T) otherwise. MediumLowPoly keeps only the polynomial terms in
/// d T. At T = 0 every regime except HighT gives the leading PFA term;
/// HighT at T = 0 throws DomainError.
double pfa_closed_small_d(const Geometry& g, const BoundaryPair& pair, double T, Regime regime = Regime::Auto);

/// Force -dE/dd of the same closed forms (g_s, g_a in place of h_s, h_a).
double pfa_closed_force_small_d(const Geometry& g, const BoundaryPair& pair, double T,
                                Regime regime = Regime::Auto);

/// d T above which Auto switches to the high-temperature form.
inline constexpr double kHighTThreshold = 2.0;

}  // namespace casimir::pfa
