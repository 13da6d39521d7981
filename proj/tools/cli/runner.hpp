#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace casimir::cli {

/// One output line: a route evaluated at one (d, T).
struct Row {
  Route route = Route::Exact;
  double d = 0.0;
  double T = 0.0;
  Kind kind = Kind::EnergyT0;
  double value = 0.0;
  std::optional<double> est_rel_err;
  std::optional<int> l_max, quad_pts, p_max;
  bool ok = true;        // false: not converged or failed
  std::string message;   // failure or validity warning
  std::optional<double> validity_hint;  // asym route
};

/// Signed (a - b) / |b| between two routes at one (d, T).
struct CompareRow {
  double d = 0.0;
  double T = 0.0;
  Kind kind = Kind::EnergyT0;
  Route a = Route::Exact;
  Route b = Route::Pfa;
  double rel_dev = 0.0;
};

struct RunResult {
  std::vector<Row> rows;
  std::vector<CompareRow> compare;
  int failures = 0;
};

/// Throws ConfigError if no route is selected.
void require_routes(const RunConfig& c);

/// Evaluates every (route, d, T) on `threads` workers. Rows come back in
/// input order (d outer, then T, then route) whatever the completion order.
RunResult run(const RunConfig& c, int threads);

/// Value against resolution for the exact route at one (d, T).
struct ConvergenceStep {
  std::string axis;  // adaptive, l_max, quadrature, matsubara
  int l_max = 0;
  int quad_pts = 0;
  int p_max = 0;
  double value = 0.0;
  std::optional<double> delta;  // change from the previous step on the axis
  std::optional<double> rate;   // |delta_k / delta_{k-1}|
};

struct ConvergenceTable {
  double d = 0.0;
  double T = 0.0;
  std::vector<ConvergenceStep> steps;
  bool l_monotone = true;  // |delta| decreases along the l_max axis
  bool ok = true;
  std::string message;
};

std::vector<ConvergenceTable> convergence_report(const RunConfig& c, int threads);

}  // namespace casimir::cli
