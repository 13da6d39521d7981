#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base of every error the library reports.
class CasimirError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a kernel (x <= 0 and the like).
class DomainError : public CasimirError {
 public:
  using CasimirError::CasimirError;
};

/// Invalid geometry, boundary pair or configuration value.
class ValidationError : public CasimirError {
 public:
  using CasimirError::CasimirError;
};

/// Robin transition element with a vanishing denominator.
class SingularTransitionError : public CasimirError {
 public:
  SingularTransitionError(int l, double xi)
      : CasimirError("singular Robin transition element at l=" + std::to_string(l) +
                     ", xi=" + std::to_string(xi)),
        l(l),
        xi(xi) {}
  int l;
  double xi;
};

/// A balanced block entry still overflowed when materialized.
class TruncationOverflowError : public CasimirError {
 public:
  using CasimirError::CasimirError;
};

/// det(1 - M) came out non-positive: the truncated operator is not a contraction.
class SpectralRadiusError : public CasimirError {
 public:
  using CasimirError::CasimirError;
};

/// Resolution caps were hit before the requested tolerance was met.
class NonConvergedError : public CasimirError {
 public:
  NonConvergedError(const std::string& what, double best_estimate, double est_rel_err)
      : CasimirError(what), best_estimate(best_estimate), est_rel_err(est_rel_err) {}
  double best_estimate;
  double est_rel_err;
};

}  // namespace casimir
