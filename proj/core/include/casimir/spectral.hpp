#pragma once

#include "casimir/geometry.hpp"
#include "casimir/round_trip.hpp"

namespace casimir {

struct ConvergenceSpec {
  double rel_tol = 1e-6;
  int l_max_initial = 0;           // 0: derived from the geometry
  int l_max_cap = 3000;
  int quad_points_initial = 6;     // Gauss-Legendre points per frequency panel
  int quad_points_cap = 64;
  double matsubara_tail_tol = 1e-9;
  int threads = 1;                 // workers for the m-sum

  void validate() const;
};

enum class Kind { EnergyT0, FreeEnergy, Force };

std::string to_string(Kind k);

/// Energy, free energy or force (hbar = c = k_B = 1) with the resolution
/// that produced it.
struct ResultRecord {
  double value = 0.0;
  Kind kind = Kind::EnergyT0;
  Geometry geometry;
  BoundaryPair pair;
  double temperature = 0.0;
  int l_max_used = 0;
  int quad_points_used = 0;  // frequency nodes (T = 0) or Matsubara terms (T > 0)
  int p_max_used = 0;
  double est_rel_err = 0.0;
};

/// ln det(1 - M) of one block by pivoted LU. Throws SpectralRadiusError if
/// the determinant is not positive.
double logdet_one_minus(const BlockMatrix& block);

/// Sum over m of ln det(1 - M(m, xi)): the m = 0 block plus twice each
/// m > 0 block, stopping once further blocks are negligible.
double trace_over_m(double xi, int l_max, const Geometry& g, const BoundaryPair& pair);

/// Starting truncation: ceil(5 r_A / d) interior, ceil(5 r_A r_B / ((r_A + r_B) d)) exterior.
int initial_l_max(const Geometry& g);

/// (1/2pi) int_0^inf dxi Tr ln(1 - M(xi)), with quadrature refinement and
/// l_max escalation until the relative change drops below rel_tol.
/// Throws NonConvergedError (carrying the best estimate) at the caps.
ResultRecord energy_T0(const Geometry& g, const BoundaryPair& pair, const ConvergenceSpec& spec = {});

/// T sum'_p Tr ln(1 - M(xi_p)), xi_p = 2 pi p T, p = 0 at a small positive
/// frequency with weight 1/2.
ResultRecord free_energy(const Geometry& g, const BoundaryPair& pair, double T, const ConvergenceSpec& spec = {});

/// -dE/dd by a five-point stencil (h = 1e-3 d) at the resolution selected
/// for the central point. T = 0 differentiates the energy, T > 0 the free
/// energy.
ResultRecord force(const Geometry& g, const BoundaryPair& pair, double T, const ConvergenceSpec& spec = {});

/// One evaluation at a caller-chosen resolution, for convergence studies.
struct Resolution {
  int l_max = 0;
  int lt_max = 0;        // 0: default_lt_max
  int quad_points = 8;   // per panel, T = 0
  int p_max = 0;         // T > 0; 0: estimated from the decay
};

ResultRecord evaluate_at(const Geometry& g, const BoundaryPair& pair, double T, const Resolution& res,
                         int threads = 1);

}  // namespace casimir
