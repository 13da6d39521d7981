#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/runner.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNonConverged = 3;

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::vector<std::string> routes;
  std::string out;
  std::string format;
  int threads = 0;
  bool deterministic = false;
  bool allow_partial = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "key = value run configuration")->check(CLI::ExistingFile);
  sub->add_option("--set", o.sets, "override one configuration key (key=value), repeatable");
  sub->add_option("--route", o.routes, "exact, pfa or asym; repeatable, replaces the configured routes");
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--format", o.format, "csv, json or pretty");
  sub->add_option("--threads", o.threads, "worker threads (default: CASIMIR_THREADS or 1)");
  sub->add_flag("--deterministic", o.deterministic, "single fixed evaluation order");
  sub->add_flag("--allow-partial", o.allow_partial, "exit 0 even if some exact points did not converge");
}

int thread_count(const Options& o) {
  if (o.threads != 0) {
    if (o.threads < 1) throw ConfigError("--threads must be at least 1");
    return o.threads;
  }
  if (const char* env = std::getenv("CASIMIR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) throw ConfigError("CASIMIR_THREADS must be a positive integer");
    return static_cast<int>(n);
  }
  return 1;
}

RunConfig load(const Options& o) {
  ConfigSource src;
  if (!o.config.empty()) src.parse_file(o.config);
  for (const auto& s : o.sets) src.set(s);
  RunConfig c = src.build();
  if (!o.routes.empty()) {
    c.routes.clear();
    for (const auto& r : o.routes) c.routes.push_back(parse_route(r));
  }
  if (!o.format.empty()) c.format = parse_format(o.format);
  if (!o.out.empty()) c.out = o.out;
  if (o.deterministic) c.deterministic = true;
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + c.out + "'");
  f << text;
}

int report_rows(const RunResult& r, bool allow_partial) {
  for (const Row& row : r.rows) {
    if (row.message.empty()) continue;
    std::cerr << (row.ok ? "warning: " : "error: ") << to_string(row.route) << " d=" << format_number(row.d)
              << " T=" << format_number(row.T) << ": " << row.message << '\n';
  }
  return r.failures > 0 && !allow_partial ? kExitNonConverged : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir interaction between two spheres: exact, PFA and small-gap asymptotic routes"};
  app.require_subcommand(1);
  Options o;
  auto* compute = app.add_subcommand("compute", "evaluate one gap at the configured temperatures");
  auto* sweep = app.add_subcommand("sweep", "evaluate every configured gap and temperature");
  auto* compare = app.add_subcommand("compare", "sweep with two or more routes and their relative deviations");
  auto* convergence = app.add_subcommand("convergence", "exact value against l_max and frequency resolution");
  for (auto* s : {compute, sweep, compare, convergence}) add_common(s, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    RunConfig c = load(o);
    const int threads = thread_count(o);
    std::ostringstream text;

    if (convergence->parsed()) {
      if (c.routes.empty()) c.routes = {Route::Exact};
      const auto tables = convergence_report(c, threads);
      write_convergence(text, c, tables, c.format);
      emit(c, text.str());
      int failed = 0;
      for (const auto& t : tables) {
        if (t.ok) continue;
        ++failed;
        std::cerr << "error: d=" << format_number(t.d) << " T=" << format_number(t.T) << ": " << t.message << '\n';
      }
      return failed > 0 && !o.allow_partial ? kExitNonConverged : 0;
    }

    std::string command = "sweep";
    if (compute->parsed()) {
      command = "compute";
      if (c.d.size() != 1) throw ConfigError("compute takes a single gap; use sweep for several");
    }
    if (compare->parsed()) {
      command = "compare";
      if (c.routes.size() < 2) throw ConfigError("compare needs at least two routes");
    }
    const RunResult r = run(c, threads);
    write_run(text, c, r, c.format, command);
    emit(c, text.str());
    return report_rows(r, o.allow_partial);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
