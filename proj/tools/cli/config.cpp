#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace casimir::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) throw ConfigError("not a number: '" + t + "'");
  return v;
}

int parse_int(const std::string& s) {
  const std::string t = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) throw ConfigError("not an integer: '" + t + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("not a boolean: '" + t + "'");
}

const std::set<std::string> kKeys = {
    "r_a", "r_b", "mode", "d", "l", "field", "cond_a", "cond_b", "alpha_a", "alpha_b", "t", "kind", "routes",
    "rel_tol", "l_max_initial", "l_max_cap", "quad_points_initial", "quad_points_cap", "matsubara_tail_tol",
    "format", "out", "deterministic",
};

const std::set<std::string> kScalarConds = {"dirichlet", "neumann", "robin"};
const std::set<std::string> kEmConds = {"pec", "permeable"};

}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::Exact: return "exact";
    case Route::Pfa: return "pfa";
    case Route::Asym: return "asym";
  }
  return "?";
}

std::string to_string(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Pretty: return "pretty";
  }
  return "?";
}

Route parse_route(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "exact") return Route::Exact;
  if (t == "pfa") return Route::Pfa;
  if (t == "asym") return Route::Asym;
  throw ConfigError("unknown route '" + t + "' (exact, pfa, asym)");
}

Format parse_format(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "csv") return Format::Csv;
  if (t == "json") return Format::Json;
  if (t == "pretty") return Format::Pretty;
  throw ConfigError("unknown format '" + t + "' (csv, json, pretty)");
}

std::vector<double> parse_values(const std::string& s) {
  const std::string t = trim(s);
  if (t.rfind("log:", 0) == 0) {
    const auto parts = split(t.substr(4), ':');
    if (parts.size() != 3) throw ConfigError("log range is log:start:stop:count");
    const double a = parse_double(parts[0]), b = parse_double(parts[1]);
    const int n = parse_int(parts[2]);
    if (!(a > 0.0) || !(b > 0.0) || n < 1) throw ConfigError("log range needs positive ends and count >= 1");
    if (n == 1) return {a};
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    v.back() = b;
    return v;
  }
  std::vector<double> v;
  for (const auto& item : split(t, ',')) v.push_back(parse_double(item));
  if (v.empty()) throw ConfigError("empty value list");
  return v;
}

BoundaryPair RunConfig::pair() const {
  auto make = [](const std::string& name, const std::optional<double>& alpha) {
    if (name == "dirichlet") return Condition::dirichlet();
    if (name == "neumann") return Condition::neumann();
    if (name == "robin") return Condition::robin(alpha.value_or(0.0));
    if (name == "pec") return Condition::pec();
    return Condition::permeable();
  };
  return field == FieldType::EM ? BoundaryPair::em(make(cond_A, alpha_A), make(cond_B, alpha_B))
                                : BoundaryPair::scalar(make(cond_A, alpha_A), make(cond_B, alpha_B));
}

Geometry RunConfig::geometry(double gap) const { return Geometry::from_gap(r_A, r_B, gap, mode); }

void ConfigSource::put(const std::string& key, const std::string& value, const std::string& where) {
  const std::string k = lower(key);
  if (!kKeys.count(k)) throw ConfigError(where + ": unknown key '" + key + "'");
  entries_[k] = {value, where};
}

void ConfigSource::parse_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(n);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    put(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
}

void ConfigSource::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  parse_text(ss.str(), path);
}

void ConfigSource::set(const std::string& assignment, const std::string& origin) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(origin + ": expected key=value, got '" + assignment + "'");
  put(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), origin);
}

RunConfig ConfigSource::build() const {
  RunConfig c;
  auto has = [&](const char* k) { return entries_.count(k) > 0; };
  // Runs a field parser and prefixes failures with the value's origin.
  auto with = [&](const char* k, auto&& fn) {
    const Entry& e = entries_.at(k);
    try {
      fn(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(e.where + ": " + k + ": " + err.what());
    }
  };
  auto fail = [&](const char* k, const std::string& msg) {
    throw ConfigError((has(k) ? entries_.at(k).where + ": " : std::string()) + k + ": " + msg);
  };
  auto required = [&](const char* k) {
    if (!has(k)) throw ConfigError(std::string("missing required key '") + k + "'");
  };

  required("r_a");
  required("r_b");
  with("r_a", [&](const std::string& v) { c.r_A = parse_double(v); });
  with("r_b", [&](const std::string& v) { c.r_B = parse_double(v); });
  if (!(c.r_A > 0.0) || !std::isfinite(c.r_A)) fail("r_a", "must be positive");
  if (!(c.r_B > 0.0) || !std::isfinite(c.r_B)) fail("r_b", "must be positive");

  if (has("mode")) {
    with("mode", [&](const std::string& v) {
      const std::string m = lower(v);
      if (m == "interior") c.mode = Mode::Interior;
      else if (m == "exterior") c.mode = Mode::Exterior;
      else throw ConfigError("expected interior or exterior, got '" + v + "'");
    });
  }
  if (c.mode == Mode::Interior && !(c.r_A < c.r_B)) fail("r_a", "interior mode needs r_A < r_B");

  if (has("d") == has("l")) throw ConfigError("give exactly one of d and L");
  if (has("l")) {
    double L = 0.0;
    with("l", [&](const std::string& v) { L = parse_double(v); });
    c.L = L;
    c.d = {c.mode == Mode::Interior ? c.r_B - c.r_A - L : L - (c.r_A + c.r_B)};
  } else {
    with("d", [&](const std::string& v) { c.d = parse_values(v); });
  }
  for (double gap : c.d) {
    const char* k = has("l") ? "l" : "d";
    if (!(gap > 0.0) || !std::isfinite(gap)) fail(k, "gap must be positive, got " + std::to_string(gap));
    if (c.mode == Mode::Interior && !(gap < c.r_B - c.r_A)) fail(k, "interior gap must be below r_B - r_A");
  }

  if (has("field")) {
    with("field", [&](const std::string& v) {
      const std::string f = lower(v);
      if (f == "scalar") c.field = FieldType::Scalar;
      else if (f == "em") c.field = FieldType::EM;
      else throw ConfigError("expected scalar or em, got '" + v + "'");
    });
  }
  const auto& allowed = c.field == FieldType::EM ? kEmConds : kScalarConds;
  auto condition = [&](const char* key, const char* alpha_key, std::string& name, std::optional<double>& alpha) {
    required(key);
    with(key, [&](const std::string& v) {
      name = lower(v);
      if (!allowed.count(name)) {
        throw ConfigError("'" + v + "' is not a " + (c.field == FieldType::EM ? "em" : "scalar") + " condition");
      }
    });
    const bool robin = name == "robin";
    if (robin != has(alpha_key)) fail(alpha_key, robin ? "required for a Robin condition" : "only allowed with robin");
    if (robin) {
      with(alpha_key, [&](const std::string& v) { alpha = parse_double(v); });
      if (!std::isfinite(*alpha)) fail(alpha_key, "must be finite");
    }
  };
  condition("cond_a", "alpha_a", c.cond_A, c.alpha_A);
  condition("cond_b", "alpha_b", c.cond_B, c.alpha_B);

  if (has("t")) {
    with("t", [&](const std::string& v) { c.T = parse_values(v); });
    for (double t : c.T)
      if (!(t >= 0.0) || !std::isfinite(t)) fail("t", "temperatures must be >= 0");
  }
  if (has("kind")) {
    with("kind", [&](const std::string& v) {
      const std::string k = lower(v);
      if (k == "energy") c.quantity = Quantity::Energy;
      else if (k == "force") c.quantity = Quantity::Force;
      else throw ConfigError("expected energy or force, got '" + v + "'");
    });
  }
  if (has("routes")) {
    with("routes", [&](const std::string& v) {
      for (const auto& r : split(v, ','))
        if (!r.empty()) c.routes.push_back(parse_route(r));
    });
  }

  ConvergenceSpec& s = c.convergence;
  if (has("rel_tol")) with("rel_tol", [&](const std::string& v) { s.rel_tol = parse_double(v); });
  if (has("l_max_initial")) with("l_max_initial", [&](const std::string& v) { s.l_max_initial = parse_int(v); });
  if (has("l_max_cap")) with("l_max_cap", [&](const std::string& v) { s.l_max_cap = parse_int(v); });
  if (has("quad_points_initial"))
    with("quad_points_initial", [&](const std::string& v) { s.quad_points_initial = parse_int(v); });
  if (has("quad_points_cap")) with("quad_points_cap", [&](const std::string& v) { s.quad_points_cap = parse_int(v); });
  if (has("matsubara_tail_tol"))
    with("matsubara_tail_tol", [&](const std::string& v) { s.matsubara_tail_tol = parse_double(v); });
  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("convergence settings: ") + e.what());
  }

  if (has("format")) with("format", [&](const std::string& v) { c.format = parse_format(v); });
  if (has("out")) c.out = entries_.at("out").value;
  if (has("deterministic")) with("deterministic", [&](const std::string& v) { c.deterministic = parse_bool(v); });

  try {
    c.pair().validate();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("boundary conditions: ") + e.what());
  }
  return c;
}

}  // namespace casimir::cli
