#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/spectral.hpp"

namespace casimir::cli {

enum class Route { Exact, Pfa, Asym };
enum class Format { Csv, Json, Pretty };
enum class Quantity { Energy, Force };

std::string to_string(Route r);
std::string to_string(Format f);
Route parse_route(const std::string& s);
Format parse_format(const std::string& s);

/// Validation failure tied to a config location ("run.cfg:12: ...", "--set: ...").
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct RunConfig {
  double r_A = 0.0;
  double r_B = 0.0;
  Mode mode = Mode::Interior;
  std::optional<double> L;
  std::vector<double> d;  // derived from L when L is given
  FieldType field = FieldType::Scalar;
  std::string cond_A, cond_B;  // dirichlet, neumann, robin, pec, permeable
  std::optional<double> alpha_A, alpha_B;
  std::vector<double> T{0.0};
  Quantity quantity = Quantity::Energy;
  std::vector<Route> routes;
  ConvergenceSpec convergence;
  Format format = Format::Csv;
  std::string out;
  bool deterministic = false;

  BoundaryPair pair() const;
  Geometry geometry(double gap) const;
};

/// Flat key = value configuration. Later sources override earlier ones and
/// every value remembers where it came from for error messages.
///
///   r_A = 1            r_B = 2            mode = interior | exterior
///   d = 0.1, 0.05      or d = log:0.01:0.1:5 (log-spaced, inclusive)
///   L = 0.9            (instead of d)
///   field = scalar | em
///   cond_A = dirichlet | neumann | robin | pec | permeable, alpha_A = 0.3
///   T = 0, 0.5         kind = energy | force
///   routes = exact, pfa, asym
///   rel_tol, l_max_initial, l_max_cap, quad_points_initial, quad_points_cap,
///   matsubara_tail_tol
///   format = csv | json | pretty, out = PATH, deterministic = true | false
class ConfigSource {
 public:
  void parse_file(const std::string& path);
  void parse_text(const std::string& text, const std::string& origin);
  /// "key=value" from the command line.
  void set(const std::string& assignment, const std::string& origin = "--set");

  RunConfig build() const;

 private:
  struct Entry {
    std::string value;
    std::string where;
  };
  void put(const std::string& key, const std::string& value, const std::string& where);
  std::map<std::string, Entry> entries_;
};

/// Comma-separated list or log:start:stop:count.
std::vector<double> parse_values(const std::string& s);

}  // namespace casimir::cli
