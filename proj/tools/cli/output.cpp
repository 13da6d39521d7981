#include "output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace casimir::cli {

namespace {

using json = nlohmann::ordered_json;

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, int>) return std::to_string(*v);
  else return format_number(*v);
}

template <class T>
json opt_json(const std::optional<T>& v) {
  if (!v || (std::is_floating_point_v<T> && !std::isfinite(static_cast<double>(*v)))) return nullptr;
  return *v;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string field_name(const RunConfig& c) { return casimir::to_string(c.field); }

std::string alpha_text(const std::string& cond, const std::optional<double>& alpha) {
  if (cond == "neumann") return "0";
  return opt(alpha);
}

json alpha_json(const std::string& cond, const std::optional<double>& alpha) {
  if (cond == "neumann") return 0.0;
  return opt_json(alpha);
}

std::string short_num(double v, int digits = 10) {
  if (!std::isfinite(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_csv(std::ostream& os, const RunConfig& c, const RunResult& r) {
  os << kCsvHeader << '\n';
  for (const Row& row : r.rows) {
    os << to_string(row.route) << ',' << field_name(c) << ',' << c.cond_A << ',' << c.cond_B << ','
       << alpha_text(c.cond_A, c.alpha_A) << ',' << alpha_text(c.cond_B, c.alpha_B) << ',' << casimir::to_string(c.mode)
       << ',' << format_number(c.r_A) << ',' << format_number(c.r_B) << ',' << format_number(row.d) << ','
       << format_number(row.T) << ',' << casimir::to_string(row.kind) << ',' << format_number(row.value) << ','
       << opt(row.est_rel_err) << ',' << opt(row.l_max) << ',' << opt(row.quad_pts) << ',' << opt(row.p_max) << '\n';
  }
  if (c.routes.size() < 2) return;
  os << "\ncompare,d,T,kind,route_a,route_b,rel_dev\n";
  for (const CompareRow& k : r.compare) {
    os << "compare," << format_number(k.d) << ',' << format_number(k.T) << ',' << casimir::to_string(k.kind) << ','
       << to_string(k.a) << ',' << to_string(k.b) << ',' << format_number(k.rel_dev) << '\n';
  }
}

void write_json(std::ostream& os, const RunConfig& c, const RunResult& r, const std::string& command) {
  json doc;
  doc["command"] = command;
  doc["units"] = kUnits;
  json rows = json::array();
  for (const Row& row : r.rows) {
    json j;
    j["route"] = to_string(row.route);
    j["field"] = field_name(c);
    j["cond_A"] = c.cond_A;
    j["cond_B"] = c.cond_B;
    j["alpha_A"] = alpha_json(c.cond_A, c.alpha_A);
    j["alpha_B"] = alpha_json(c.cond_B, c.alpha_B);
    j["mode"] = casimir::to_string(c.mode);
    j["r_A"] = c.r_A;
    j["r_B"] = c.r_B;
    j["d"] = row.d;
    j["T"] = row.T;
    j["kind"] = casimir::to_string(row.kind);
    j["value"] = num(row.value);
    j["est_rel_err"] = opt_json(row.est_rel_err);
    j["l_max"] = opt_json(row.l_max);
    j["quad_pts"] = opt_json(row.quad_pts);
    j["p_max"] = opt_json(row.p_max);
    j["converged"] = row.ok;
    if (row.validity_hint) j["validity_hint"] = *row.validity_hint;
    if (!row.message.empty()) j["message"] = row.message;
    rows.push_back(j);
  }
  doc["rows"] = rows;
  if (c.routes.size() >= 2) {
    json cmp = json::array();
    for (const CompareRow& k : r.compare) {
      cmp.push_back({{"d", k.d},
                     {"T", k.T},
                     {"kind", casimir::to_string(k.kind)},
                     {"route_a", to_string(k.a)},
                     {"route_b", to_string(k.b)},
                     {"rel_dev", num(k.rel_dev)}});
    }
    doc["compare"] = cmp;
  }
  os << doc.dump(2) << '\n';
}

void write_pretty(std::ostream& os, const RunConfig& c, const RunResult& r, const std::string& command) {
  os << "# casimir " << command << ": " << field_name(c) << ' ' << c.cond_A;
  if (c.alpha_A) os << "(" << short_num(*c.alpha_A, 6) << ")";
  os << " / " << c.cond_B;
  if (c.alpha_B) os << "(" << short_num(*c.alpha_B, 6) << ")";
  os << ", " << casimir::to_string(c.mode) << ", r_A = " << short_num(c.r_A) << ", r_B = " << short_num(c.r_B) << '\n';
  os << "# units: " << kUnits << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %-12s %-10s %-12s %-20s %-10s %6s %6s %5s\n", "route", "d", "T", "kind", "value",
                "rel_err", "l_max", "nodes", "p_max");
  os << line;
  for (const Row& row : r.rows) {
    std::snprintf(line, sizeof line, "%-6s %-12s %-10s %-12s %-20s %-10s %6s %6s %5s", to_string(row.route).c_str(),
                  short_num(row.d).c_str(), short_num(row.T).c_str(), casimir::to_string(row.kind).c_str(),
                  short_num(row.value, 14).c_str(), row.est_rel_err ? short_num(*row.est_rel_err, 2).c_str() : "-",
                  row.l_max ? std::to_string(*row.l_max).c_str() : "-", row.quad_pts ? std::to_string(*row.quad_pts).c_str() : "-",
                  row.p_max ? std::to_string(*row.p_max).c_str() : "-");
    os << line;
    if (!row.message.empty()) os << "  ! " << row.message;
    os << '\n';
  }
  if (c.routes.size() < 2) return;
  os << "\n# relative deviations (a - b) / |b|\n";
  for (const CompareRow& k : r.compare) {
    std::snprintf(line, sizeof line, "d = %-12s T = %-10s %-5s vs %-5s %+.3e\n", short_num(k.d).c_str(), short_num(k.T).c_str(),
                  to_string(k.a).c_str(), to_string(k.b).c_str(), k.rel_dev);
    os << line;
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_run(std::ostream& os, const RunConfig& c, const RunResult& r, Format f, const std::string& command) {
  switch (f) {
    case Format::Csv: write_csv(os, c, r); break;
    case Format::Json: write_json(os, c, r, command); break;
    case Format::Pretty: write_pretty(os, c, r, command); break;
  }
}

void write_convergence(std::ostream& os, const RunConfig& c, const std::vector<ConvergenceTable>& tables, Format f) {
  if (f == Format::Json) {
    json doc;
    doc["command"] = "convergence";
    doc["units"] = kUnits;
    doc["field"] = field_name(c);
    doc["cond_A"] = c.cond_A;
    doc["cond_B"] = c.cond_B;
    doc["mode"] = casimir::to_string(c.mode);
    doc["r_A"] = c.r_A;
    doc["r_B"] = c.r_B;
    json arr = json::array();
    for (const auto& t : tables) {
      json jt;
      jt["d"] = t.d;
      jt["T"] = t.T;
      jt["ok"] = t.ok;
      jt["l_monotone"] = t.l_monotone;
      if (!t.message.empty()) jt["message"] = t.message;
      json steps = json::array();
      for (const auto& s : t.steps) {
        steps.push_back({{"axis", s.axis},
                         {"l_max", s.l_max},
                         {"quad_pts", s.quad_pts},
                         {"p_max", s.p_max},
                         {"value", num(s.value)},
                         {"delta", opt_json(s.delta)},
                         {"rate", opt_json(s.rate)}});
      }
      jt["steps"] = steps;
      arr.push_back(jt);
    }
    doc["tables"] = arr;
    os << doc.dump(2) << '\n';
    return;
  }
  if (f == Format::Csv) {
    os << "d,T,axis,l_max,quad_pts,p_max,value,delta,rate\n";
    for (const auto& t : tables)
      for (const auto& s : t.steps) {
        os << format_number(t.d) << ',' << format_number(t.T) << ',' << s.axis << ',' << s.l_max << ',' << s.quad_pts << ','
           << s.p_max << ',' << format_number(s.value) << ',' << opt(s.delta) << ',' << opt(s.rate) << '\n';
      }
    os << "\nsummary,d,T,adaptive_l_max,l_monotone,status\n";
    for (const auto& t : tables) {
      const int l = t.steps.empty() ? 0 : t.steps.front().l_max;
      os << "summary," << format_number(t.d) << ',' << format_number(t.T) << ',' << l << ','
         << (t.l_monotone ? "true" : "false") << ',' << (t.ok ? "ok" : t.message) << '\n';
    }
    return;
  }
  os << "# casimir convergence: " << field_name(c) << ' ' << c.cond_A << " / " << c.cond_B << ", "
     << casimir::to_string(c.mode) << ", r_A = " << short_num(c.r_A) << ", r_B = " << short_num(c.r_B) << '\n';
  char line[200];
  for (const auto& t : tables) {
    os << "\nd = " << short_num(t.d) << ", T = " << short_num(t.T);
    if (!t.ok) os << "  ! " << t.message;
    os << '\n';
    std::snprintf(line, sizeof line, "%-10s %6s %6s %5s %-20s %-11s %-8s\n", "axis", "l_max", "nodes", "p_max", "value",
                  "delta", "rate");
    os << line;
    for (const auto& s : t.steps) {
      std::snprintf(line, sizeof line, "%-10s %6d %6d %5d %-20s %-11s %-8s\n", s.axis.c_str(), s.l_max, s.quad_pts, s.p_max,
                    short_num(s.value, 14).c_str(), s.delta ? short_num(*s.delta, 3).c_str() : "-",
                    s.rate ? short_num(*s.rate, 3).c_str() : "-");
      os << line;
    }
    os << "l_max deltas " << (t.l_monotone ? "decrease monotonically" : "are NOT monotone") << '\n';
  }
}

}  // namespace casimir::cli
