#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "casimir/geometry.hpp"
#include "casimir/round_trip.hpp"

namespace casimir::detail {

struct Truncation {
  int l_max = 0;
  int lt_max = 0;
};

// ln|T| / 2 and sign(T) for l = 0..l_max of one sphere, one polarization.
struct HalfTransitions {
  std::vector<double> half_ln;
  std::vector<int> sign;
};

// Builds ln det(1 - M(m, xi)) for a fixed geometry, boundary pair and
// truncation at a batch of frequencies. The 3j coefficients of a block are
// computed once per m and reused for every frequency.
//
// The work is organized around W = |T^A|^{1/2} S |T^B|^{1/2}, where S is the
// symmetric part of the translation matrix; then M is similar to
// sA W sB W^T with sign diagonals sA, sB.
class BlockEngine {
 public:
  BlockEngine(const Geometry& g, const BoundaryPair& pair, Truncation t, std::vector<double> xis);

  const Truncation& truncation() const { return trunc_; }
  const std::vector<double>& xis() const { return xis_; }
  bool em() const { return em_; }
  int l_min(int m) const { return em_ ? std::max(1, m) : m; }

  // out[k] = ln det(1 - M(m, xis[k])).
  void logdets(int m, std::span<double> out) const;

  // The balanced block at xis[k].
  BlockMatrix block(int m, std::size_t k) const;

 private:
  struct XiTables {
    double xi = 0.0;
    double ln_pref = 0.0;           // ln sqrt(pi / (2 xi L))
    std::vector<double> ln_z;       // ln Z_{j+1/2}(xi L)
    std::vector<double> z_step;     // Z_{j+2}/Z_j (interior) or Z_{j-2}/Z_j (exterior)
    HalfTransitions a[2];           // TE/scalar, TM
    HalfTransitions b[2];
  };

  void build_w(int m, std::size_t k_begin, std::size_t k_end, std::vector<Eigen::MatrixXd>& w) const;
  void sign_vectors(int m, std::size_t k, Eigen::VectorXd& da, Eigen::VectorXd& db) const;
  double logdet_from_w(const Eigen::MatrixXd& w, const Eigen::VectorXd& da, const Eigen::VectorXd& db) const;

  Geometry g_;
  BoundaryPair pair_;
  Truncation trunc_;
  std::vector<double> xis_;
  bool em_ = false;
  bool interior_ = true;
  std::vector<XiTables> tables_;
  std::vector<double> z_step_t_;  // z_step transposed: [j * n_xi + k]
};

// Transition tables used by both the engine and the single-element API.
HalfTransitions scalar_transitions(int l_max, double xi, double r, const Condition& c, bool regular_form);

// Dense ln det(1 - A) with pivoted LU; throws SpectralRadiusError if the
// determinant is not positive.
double logdet_one_minus_dense(const Eigen::Ref<const Eigen::MatrixXd>& a);

}  // namespace casimir::detail
