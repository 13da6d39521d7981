#include <doctest.h>

#include <cmath>
#include <cstring>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/runner.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

const char* kBase = R"(# DD interior
r_A = 1
r_B = 2
mode = interior
d = 0.4, 0.2      # two gaps
cond_A = dirichlet
cond_B = dirichlet
T = 0
routes = pfa, asym
)";

RunConfig config(const std::vector<std::string>& sets = {}, const char* text = kBase) {
  ConfigSource src;
  src.parse_text(text, "run.cfg");
  for (const auto& s : sets) src.set(s);
  return src.build();
}

std::string csv_of(const RunConfig& c, const RunResult& r) {
  std::ostringstream os;
  write_run(os, c, r, Format::Csv, "sweep");
  return os.str();
}

std::vector<std::vector<std::string>> csv_table(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && !line.empty()) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string error_of(const std::vector<std::string>& sets, const char* text = kBase) {
  try {
    RunConfig c = config(sets, text);
    require_routes(c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config: values, lists and log ranges") {
  const RunConfig c = config();
  CHECK(c.d == std::vector<double>{0.4, 0.2});
  CHECK(c.routes.size() == 2);
  CHECK(c.pair().label() == "DD");

  const auto v = parse_values("log:0.01:1:3");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.01);
  CHECK(v[1] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(v[2] == 1.0);

  const RunConfig l = config({}, "r_A=1\nr_B=2\ncond_A=dirichlet\ncond_B=neumann\nL=0.7\n");
  CHECK(l.d.size() == 1);
  CHECK(l.d[0] == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("config: validation errors name the location") {
  CHECK(error_of({"routes="}).find("at least one") != std::string::npos);
  CHECK(error_of({"cond_A=robin"}).find("alpha_a") != std::string::npos);
  CHECK(error_of({"alpha_A=0.5"}).find("only allowed with robin") != std::string::npos);
  CHECK(error_of({"nonsense=1"}) == "--set: unknown key 'nonsense'");
  CHECK(error_of({"d=0.4, -0.1"}).find("gap must be positive") != std::string::npos);
  CHECK(error_of({"d=1.5"}).find("below r_B - r_A") != std::string::npos);
  CHECK(error_of({"cond_A=pec"}).find("not a scalar condition") != std::string::npos);
  CHECK(error_of({"rel_tol=abc"}).find("--set: rel_tol: not a number") != std::string::npos);
  CHECK(error_of({}, "r_A=1\nr_B=2\nbroken\n") == "run.cfg:3: expected key = value");
  CHECK(error_of({}, "r_A=1\nr_B=2\nd=0.1\nL=0.5\ncond_A=dirichlet\ncond_B=dirichlet\n").find("exactly one of d and L") !=
        std::string::npos);
}

TEST_CASE("CSV header is fixed") {
  const RunConfig c = config();
  const std::string csv = csv_of(c, run(c, 1));
  CHECK(csv.substr(0, csv.find('\n')) ==
        "route,field,cond_A,cond_B,alpha_A,alpha_B,mode,r_A,r_B,d,T,kind,value,est_rel_err,l_max,quad_pts,p_max");
}

TEST_CASE("CSV and JSON carry identical doubles") {
  const RunConfig c = config({"cond_A=robin", "alpha_A=0.37", "T=0, 0.9"});
  const RunResult r = run(c, 1);
  const auto rows = csv_table(csv_of(c, r));
  std::ostringstream js;
  write_run(js, c, r, Format::Json, "sweep");
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(rows.size() == doc["rows"].size() + 1);
  for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
    const auto& j = doc["rows"][i];
    const auto& cells = rows[i + 1];
    REQUIRE(cells.size() == 17);
    for (auto [col, key] : {std::pair{4, "alpha_A"}, {9, "d"}, {10, "T"}, {12, "value"}}) {
      const double from_csv = std::stod(cells[col]);
      const double from_json = j[key].get<double>();
      CHECK(std::memcmp(&from_csv, &from_json, sizeof(double)) == 0);
    }
    CHECK(cells[5].empty());
    CHECK(j["alpha_B"].is_null());
  }
}

TEST_CASE("routes pfa and asym approach each other as d decreases") {
  const RunConfig c = config({"d=log:0.2:0.01:5"});
  const RunResult r = run(c, 1);
  REQUIRE(r.compare.size() == 5);
  for (std::size_t i = 1; i < r.compare.size(); ++i) {
    CHECK(std::fabs(r.compare[i].rel_dev) < std::fabs(r.compare[i - 1].rel_dev));
  }
}

TEST_CASE("asym rows warn above the validity threshold") {
  const RunResult r = run(config(), 1);
  for (const Row& row : r.rows) {
    if (row.route != Route::Asym) continue;
    CHECK(row.ok);
    CHECK(row.message.empty() == (row.d <= 0.2));
  }
}

TEST_CASE("exact route: deterministic output and electromagnetic duality") {
  const std::vector<std::string> exact = {"routes=exact", "d=0.4", "rel_tol=1e-4", "T=0, 0.8"};
  const RunConfig c = config(exact);
  const std::string a = csv_of(c, run(c, 1));
  CHECK(a == csv_of(c, run(c, 1)));
  CHECK(a == csv_of(c, run(c, 3)));

  std::vector<std::string> em = exact;
  em.insert(em.end(), {"field=em", "cond_A=pec", "cond_B=pec"});
  const RunResult cc = run(config(em), 1);
  em.insert(em.end(), {"cond_A=permeable", "cond_B=permeable"});
  const RunResult pp = run(config(em), 1);
  for (std::size_t i = 0; i < cc.rows.size(); ++i) {
    CHECK(std::fabs(cc.rows[i].value / pp.rows[i].value - 1) < 1e-10);
  }
}

TEST_CASE("non-convergence is reported per row") {
  const RunConfig c = config({"routes=exact, asym", "d=0.4", "rel_tol=1e-12", "l_max_cap=12"});
  const RunResult r = run(c, 1);
  CHECK(r.failures == 1);
  CHECK_FALSE(r.rows[0].ok);
  CHECK(r.rows[0].message.find("not converged") != std::string::npos);
  CHECK(r.rows[1].ok);
  CHECK(r.compare.empty());
}

TEST_CASE("convergence report") {
  const RunConfig c = config({"routes=exact", "d=0.4", "rel_tol=1e-5"});
  const auto tables = convergence_report(c, 1);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].ok);
  CHECK(tables[0].l_monotone);
  CHECK(tables[0].steps.front().axis == "adaptive");
  CHECK_THROWS_AS(convergence_report(config({"routes=pfa"}), 1), ConfigError);
}
