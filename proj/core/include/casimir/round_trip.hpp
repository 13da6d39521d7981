#pragma once

#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/log_scaled.hpp"

namespace casimir {

/// One (m, xi) block of the round-trip operator M = T^A U^AB T^B U^BA,
/// truncated to l_min <= l <= l_max on sphere A.
///
/// The raw elements span hundreds of orders of magnitude, so the block is
/// stored after the diagonal similarity M' = D^{-1} M D with
/// D_ii = par_i exp(ln_scale_i). det(1 - M') = det(1 - M). unbalanced()
/// recovers the original element.
///
/// EM blocks interleave polarizations: index 2 (l - l_min) + p, p = 0 for TE
/// and 1 for TM.
struct BlockMatrix {
  int m = 0;
  int l_min = 0;
  int l_max = 0;
  bool em = false;
  int dim = 0;
  std::vector<double> entries;  // row-major, dim x dim
  std::vector<double> ln_scale;
  std::vector<int> parity;

  double operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
  LogScaled unbalanced(int i, int j) const;
  int l_of(int i) const { return l_min + (em ? i / 2 : i); }
};

/// Transition element of the inner/first sphere A for a scalar condition:
/// Dirichlet I/K, Robin (u I + x I') / (u K + x K') at x = xi r_A.
/// Throws SingularTransitionError if the Robin denominator vanishes.
LogScaled transition_A(int l, double xi, const Geometry& g, const Condition& c);

/// Transition element of sphere B. Interior geometry uses K/I (and the
/// matching Robin form) at x = xi r_B; exterior is transition_A with r_B.
LogScaled transition_B(int l, double xi, const Geometry& g, const Condition& c);

struct PolarizedTransition {
  LogScaled te;
  LogScaled tm;
};

/// TE/TM transition elements. PEC: (T^D, -T^R at u = 1/2); permeable:
/// (T^R at u = 1/2, -T^D).
PolarizedTransition em_transition_A(int l, double xi, const Geometry& g, const Condition& c);
PolarizedTransition em_transition_B(int l, double xi, const Geometry& g, const Condition& c);

/// U^AB_{l,lt} for azimuthal index m, in log form.
LogScaled translation_element_log(int l, int lt, int m, double xi, const Geometry& g);

/// U^AB_{l,lt}; throws std::overflow_error when it does not fit a double.
double translation_element(int l, int lt, int m, double xi, const Geometry& g);

/// Default cutoff of the intermediate sum over B multipoles.
int default_lt_max(int l_max, const Geometry& g);

/// Pass lt_max <= 0 to use default_lt_max.
BlockMatrix assemble_scalar_block(int m, double xi, int l_max, const Geometry& g,
                                  const BoundaryPair& pair, int lt_max = 0);
BlockMatrix assemble_em_block(int m, double xi, int l_max, const Geometry& g,
                              const BoundaryPair& pair, int lt_max = 0);

}  // namespace casimir
