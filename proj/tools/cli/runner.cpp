#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include "casimir/asymptotics.hpp"
#include "casimir/pfa.hpp"

namespace casimir::cli {

namespace {

// Runs jobs[0..n) on up to `workers` threads; the first exception wins.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& job) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) first = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

Kind kind_for(const RunConfig& c, double T) {
  if (c.quantity == Quantity::Force) return Kind::Force;
  return T > 0.0 ? Kind::FreeEnergy : Kind::EnergyT0;
}

void run_exact(const RunConfig& c, const Geometry& g, double T, int threads, Row& row) {
  ConvergenceSpec spec = c.convergence;
  spec.threads = threads;
  const BoundaryPair pair = c.pair();
  ResultRecord r;
  if (c.quantity == Quantity::Force) r = force(g, pair, T, spec);
  else r = T > 0.0 ? free_energy(g, pair, T, spec) : energy_T0(g, pair, spec);
  row.value = r.value;
  row.est_rel_err = r.est_rel_err;
  row.l_max = r.l_max_used;
  row.quad_pts = r.quad_points_used;
  row.p_max = r.p_max_used;
}

void run_pfa(const RunConfig& c, const Geometry& g, double T, Row& row) {
  const BoundaryPair pair = c.pair();
  if (c.quantity == Quantity::Energy) {
    row.value = pfa::pfa_free_energy(g, pair, T);
    return;
  }
  // -dE/dd, five-point stencil on the integrated plate density.
  const double d = g.d(), h = 1e-3 * d;
  auto e = [&](double x) { return pfa::pfa_free_energy(g.with_gap(x), pair, T); };
  row.value = -(-e(d + 2 * h) + 8 * e(d + h) - 8 * e(d - h) + e(d - 2 * h)) / (12 * h);
}

void run_asym(const RunConfig& c, const Geometry& g, double T, Row& row) {
  const BoundaryPair pair = c.pair();
  row.validity_hint = g.d() / std::min(g.r_A, g.r_B);
  if (T == 0.0) {
    row.value = c.quantity == Quantity::Force ? asym::force_asym_T0(g, pair).value : asym::energy_asym_T0(g, pair).value;
  } else {
    // Finite temperature carries only the leading (PFA) order.
    row.value = c.quantity == Quantity::Force ? pfa::pfa_closed_force_small_d(g, pair, T)
                                              : asym::free_energy_leading(g, pair, T);
  }
  if (*row.validity_hint > asym::kValidityWarning) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "validity: d/min(r) = %.3g > %.2g", *row.validity_hint, asym::kValidityWarning);
    row.message = buf;
  }
}

void evaluate(const RunConfig& c, Row& row, int threads) {
  const Geometry g = c.geometry(row.d);
  try {
    switch (row.route) {
      case Route::Exact: run_exact(c, g, row.T, threads, row); break;
      case Route::Pfa: run_pfa(c, g, row.T, row); break;
      case Route::Asym: run_asym(c, g, row.T, row); break;
    }
  } catch (const NonConvergedError& e) {
    row.ok = false;
    row.value = e.best_estimate;
    row.est_rel_err = e.est_rel_err;
    row.message = std::string("not converged: ") + e.what();
  } catch (const ValidationError&) {
    throw;
  } catch (const CasimirError& e) {
    row.ok = false;
    row.value = std::nan("");
    row.message = std::string("failed: ") + e.what();
  }
}

int pool_size(const RunConfig& c, int threads) { return c.deterministic ? 1 : threads; }

}  // namespace

void require_routes(const RunConfig& c) {
  if (c.routes.empty()) throw ConfigError("routes: select at least one of exact, pfa, asym");
}

RunResult run(const RunConfig& c, int threads) {
  require_routes(c);
  RunResult out;
  for (double d : c.d)
    for (double T : c.T)
      for (Route r : c.routes) {
        Row row;
        row.route = r;
        row.d = d;
        row.T = T;
        row.kind = kind_for(c, T);
        out.rows.push_back(row);
      }

  // Spare workers go to the m-sum of each exact point.
  const int workers = std::max(1, std::min<int>(pool_size(c, threads), static_cast<int>(out.rows.size())));
  const int inner = c.deterministic ? 1 : std::max(1, threads / workers);
  parallel_for(out.rows.size(), workers, [&](std::size_t i) { evaluate(c, out.rows[i], inner); });

  const std::size_t nr = c.routes.size();
  for (std::size_t base = 0; base < out.rows.size(); base += nr) {
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = i + 1; j < nr; ++j) {
        const Row& a = out.rows[base + i];
        const Row& b = out.rows[base + j];
        if (!a.ok || !b.ok) continue;
        out.compare.push_back({a.d, a.T, a.kind, a.route, b.route, (a.value - b.value) / std::fabs(b.value)});
      }
    }
  }
  for (const Row& r : out.rows)
    if (!r.ok) ++out.failures;
  return out;
}

std::vector<ConvergenceTable> convergence_report(const RunConfig& c, int threads) {
  if (std::find(c.routes.begin(), c.routes.end(), Route::Exact) == c.routes.end()) {
    throw ConfigError("routes: the convergence report needs the exact route");
  }
  std::vector<ConvergenceTable> tables;
  for (double d : c.d)
    for (double T : c.T) {
      ConvergenceTable t;
      t.d = d;
      t.T = T;
      tables.push_back(t);
    }

  const int workers = std::max(1, std::min<int>(pool_size(c, threads), static_cast<int>(tables.size())));
  const int inner = c.deterministic ? 1 : std::max(1, threads / workers);
  const BoundaryPair pair = c.pair();

  parallel_for(tables.size(), workers, [&](std::size_t i) {
    ConvergenceTable& t = tables[i];
    const Geometry g = c.geometry(t.d);
    auto push = [&](const std::string& axis, const ResultRecord& r) {
      ConvergenceStep s;
      s.axis = axis;
      s.l_max = r.l_max_used;
      s.quad_pts = r.quad_points_used;
      s.p_max = r.p_max_used;
      s.value = r.value;
      if (!t.steps.empty() && t.steps.back().axis == axis) {
        s.delta = s.value - t.steps.back().value;
        if (t.steps.back().delta && *t.steps.back().delta != 0.0) s.rate = std::fabs(*s.delta / *t.steps.back().delta);
      }
      t.steps.push_back(s);
    };
    try {
      ConvergenceSpec spec = c.convergence;
      spec.threads = inner;
      const ResultRecord best = t.T > 0.0 ? free_energy(g, pair, t.T, spec) : energy_T0(g, pair, spec);
      push("adaptive", best);

      // l_max axis: geometric escalation from the starting truncation.
      const int p_fixed = best.p_max_used;
      std::vector<int> ls;
      for (double l = initial_l_max(g); ls.size() < 4 || ls.back() < 1.5 * best.l_max_used; l *= 1.5) {
        ls.push_back(static_cast<int>(std::ceil(l)));
      }
      for (int l : ls) push("l_max", evaluate_at(g, pair, t.T, {l, 0, 16, p_fixed}, inner));
      for (std::size_t k = 2; k < t.steps.size(); ++k) {
        const auto& a = t.steps[k - 1];
        const auto& b = t.steps[k];
        if (a.axis == "l_max" && b.axis == "l_max" && a.delta && b.delta && std::fabs(*b.delta) > std::fabs(*a.delta)) {
          t.l_monotone = false;
        }
      }

      if (t.T == 0.0) {
        for (int n : {4, 6, 8, 12, 16, 24}) push("quadrature", evaluate_at(g, pair, 0.0, {best.l_max_used, 0, n, 0}, inner));
      } else {
        for (int p = 1; p <= std::max(4, 2 * p_fixed); p *= 2)
          push("matsubara", evaluate_at(g, pair, t.T, {best.l_max_used, 0, 8, p}, inner));
      }
    } catch (const NonConvergedError& e) {
      t.ok = false;
      t.message = std::string("not converged: ") + e.what();
    } catch (const ValidationError&) {
      throw;
    } catch (const CasimirError& e) {
      t.ok = false;
      t.message = std::string("failed: ") + e.what();
    }
  });
  return tables;
}

}  // namespace casimir::cli
