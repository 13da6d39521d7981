#pragma once

#include "casimir/geometry.hpp"

namespace casimir::asym {

/// Two-term small-gap expansion, value = leading * bracket with
///   bracket = 1 + gap_coef d / R + a_coef d / r_A + b_coef d / r_B,
/// R = r_B - r_A (interior) or r_A + r_B (exterior).
struct ExpansionResult {
  double leading = 0.0;
  double ntl_coefficient = 0.0;  ///< bracket = 1 + ntl_coefficient d / r_A
  double value = 0.0;
  double validity_hint = 0.0;  ///< d / min(r_A, r_B)
  double gap_coef = 0.0;
  double a_coef = 0.0;
  double b_coef = 0.0;
};

/// Energy at T = 0 through next-to-leading order for every scalar (DD, RR,
/// RD, DR) and electromagnetic (CC, PP, CP, PC) pair. Robin terms carry
/// (3 alpha - 2); Neumann is alpha = 0.
ExpansionResult energy_asym_T0(const Geometry& g, const BoundaryPair& pair);

/// Force -dE/dd of the same expansion: leading * 2 / d, corrections halved.
ExpansionResult force_asym_T0(const Geometry& g, const BoundaryPair& pair);

/// r_B -> infinity limit of energy_asym_T0 (sphere of radius r_A facing a
/// plane at gap d). Only a_coef is non-zero.
ExpansionResult sphere_plane_limit(const BoundaryPair& pair, double r_A, double d);

/// Leading free energy at temperature T,
///   -(r_A r_B T / (8 d R)) sum_k (+-1)^k coth(2 pi k d T) / k^3,
/// with the alternating sign for mixed pairs and a factor 2 for
/// electromagnetic pairs. T = 0 returns the leading T = 0 term.
double free_energy_leading(const Geometry& g, const BoundaryPair& pair, double T);

/// Coefficients of the CC force bracket of force_asym_T0 (interior) rewritten as
/// 1 + (k1/2) d/R - (k2/2) d/r_A + (k3/2) d/r_B.
struct CcForceCoefficients {
  double k1, k2, k3;
};
CcForceCoefficients cc_force_coefficients();

/// validity_hint above which the two-term expansion should not be trusted.
inline constexpr double kValidityWarning = 0.2;

}  // namespace casimir::asym
