#include "casimir/spectral.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "block_engine.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

void ConvergenceSpec::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
  if (!(matsubara_tail_tol > 0.0)) throw ValidationError("matsubara_tail_tol must be positive");
  if (l_max_initial < 0 || l_max_cap < 1) throw ValidationError("invalid l_max bounds");
  if (l_max_initial > l_max_cap) throw ValidationError("l_max_initial exceeds l_max_cap");
  if (quad_points_initial < 1 || quad_points_cap < quad_points_initial) {
    throw ValidationError("invalid quadrature point bounds");
  }
  if (threads < 1) throw ValidationError("threads must be at least 1");
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::EnergyT0: return "energy";
    case Kind::FreeEnergy: return "free_energy";
    case Kind::Force: return "force";
  }
  return "?";
}

double logdet_one_minus(const BlockMatrix& block) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      block.entries.data(), block.dim, block.dim);
  for (double v : block.entries) {
    if (!std::isfinite(v)) throw DomainError("logdet_one_minus: non-finite block entry");
  }
  return detail::logdet_one_minus_dense(a);
}

int initial_l_max(const Geometry& g) {
  const double d = g.d();
  const double v = g.mode == Mode::Interior ? 5.0 * g.r_A / d : 5.0 * g.r_A * g.r_B / ((g.r_A + g.r_B) * d);
  return std::max(3, static_cast<int>(std::ceil(v)));
}

namespace {

// A set of frequencies with one weight vector per quadrature/sum rule. Each
// rule's value is sum_k w[r][k] Tr ln(1 - M(xi_k)).
struct FrequencySet {
  std::vector<double> xi;
  std::vector<std::vector<double>> w;
};

struct MSum {
  std::vector<double> values;  // one per rule
  int m_used = 0;
};

// Sum over m with the last rule steering termination. m_fixed >= 0 pins the
// number of blocks (used by the force stencil so E(d) stays smooth).
MSum sum_over_m(const detail::BlockEngine& engine, const FrequencySet& fs, int m_fixed, double m_tol,
                int threads) {
  const int m_top = engine.truncation().l_max;
  const std::size_t nk = fs.xi.size();
  MSum out;
  out.values.assign(fs.w.size(), 0.0);
  int quiet = 0;
  int m = 0;
  std::vector<std::vector<double>> ld;
  while (m <= m_top) {
    const int batch = std::min(threads, m_top - m + 1);
    ld.assign(static_cast<std::size_t>(batch), std::vector<double>(nk));
    if (batch == 1) {
      engine.logdets(m, ld[0]);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(batch));
      for (int b = 0; b < batch; ++b) {
        pool.emplace_back([&, b] {
          try {
            engine.logdets(m + b, ld[b]);
          } catch (...) {
            errors[b] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    // Accumulate strictly in m order so the result does not depend on the
    // number of workers.
    for (int b = 0; b < batch; ++b, ++m) {
      const double factor = m == 0 ? 1.0 : 2.0;
      double last = 0.0;
      for (std::size_t r = 0; r < fs.w.size(); ++r) {
        double c = 0.0;
        for (std::size_t k = 0; k < nk; ++k) c += fs.w[r][k] * ld[b][k];
        out.values[r] += factor * c;
        last = factor * c;
      }
      out.m_used = m;
      if (m_fixed >= 0) {
        if (m >= m_fixed) return out;
        continue;
      }
      const double acc = std::fabs(out.values.back());
      quiet = (std::fabs(last) <= m_tol * acc) ? quiet + 1 : 0;
      if (quiet >= 2 && m >= 2) return out;
    }
  }
  return out;
}

// T = 0 frequency panels in t = 2 d xi.
struct TLayout {
  double t0 = 0.1;
  double growth = 2.0;
  double t_end = 48.0;
};

TLayout t_layout(const Geometry& g) {
  TLayout l;
  const double r = std::min(g.r_A, g.r_B);
  l.t0 = std::clamp(2.0 * g.d() / r, 0.02, 0.5);
  return l;
}

void append_t_rule(FrequencySet& fs, const Geometry& g, const TLayout& lay, int n, std::size_t rule, std::size_t n_rules) {
  auto q = quad::geometric_panels(lay.t0, lay.growth, lay.t_end, n);
  // t = t0 s^3 on the first panel: Neumann outer spheres in the interior
  // geometry give an integrable ln(1/xi) at small xi.
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    if (q.x[i] >= lay.t0) continue;
    const double s = q.x[i] / lay.t0;
    q.x[i] = lay.t0 * s * s * s;
    q.w[i] *= 3.0 * s * s;
  }
  const double d = g.d();
  fs.w.resize(n_rules);
  const std::size_t base = fs.xi.size();
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    fs.xi.push_back(q.x[i] / (2.0 * d));
    for (auto& w : fs.w) w.push_back(0.0);
    fs.w[rule][base + i] = q.w[i] / (2.0 * d) / (2.0 * std::numbers::pi);
  }
}

int t_rule_size(const TLayout& lay, int n) {
  return static_cast<int>(quad::geometric_panels(lay.t0, lay.growth, lay.t_end, n).x.size());
}

double matsubara_xi(const Geometry& g, double T, int p) {
  return p == 0 ? 1e-8 / std::max(g.r_A, g.r_B) : 2.0 * std::numbers::pi * p * T;
}

FrequencySet matsubara_set(const Geometry& g, double T, int p_begin, int p_end) {
  FrequencySet fs;
  fs.w.resize(1);
  for (int p = p_begin; p <= p_end; ++p) {
    fs.xi.push_back(matsubara_xi(g, T, p));
    fs.w[0].push_back(p == 0 ? 0.5 * T : T);
  }
  return fs;
}

int estimate_p_max(const Geometry& g, double T, double tail_tol) {
  // Tr ln(1 - M(xi)) decays roughly like exp(-2 d xi).
  const double p = std::log(1.0 / tail_tol) / (4.0 * std::numbers::pi * g.d() * T);
  return std::max(1, static_cast<int>(std::ceil(p)));
}

double rel_change(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

detail::Truncation truncation_for(const Geometry& g, int l_max, int lt_max = 0) {
  return {l_max, lt_max > 0 ? lt_max : default_lt_max(l_max, g)};
}

struct Evaluated {
  double value = 0.0;
  int m_used = 0;
  int nodes = 0;
  int p_max = 0;
  double tail = 0.0;  // relative size of the last Matsubara term
};

double m_tolerance(double rel_tol) { return 1e-2 * rel_tol; }

// T = 0 at fixed truncation with one or two GL orders per panel sharing the
// same block evaluations.
std::vector<double> eval_t0(const Geometry& g, const BoundaryPair& pair, detail::Truncation tr, const TLayout& lay,
                            const std::vector<int>& ns, int m_fixed, double m_tol, int threads, int& m_used) {
  FrequencySet fs;
  for (std::size_t r = 0; r < ns.size(); ++r) append_t_rule(fs, g, lay, ns[r], r, ns.size());
  detail::BlockEngine engine(g, pair, tr, fs.xi);
  const MSum s = sum_over_m(engine, fs, m_fixed, m_tol, threads);
  m_used = s.m_used;
  return s.values;
}

// T > 0 at fixed truncation; extends p_max until the last term is below the
// tail tolerance unless p_fixed > 0.
Evaluated eval_matsubara(const Geometry& g, const BoundaryPair& pair, detail::Truncation tr, double T, int p_fixed,
                         double tail_tol, int m_fixed, double m_tol, int threads) {
  Evaluated ev;
  int p_end = p_fixed > 0 ? p_fixed : estimate_p_max(g, T, tail_tol);
  int p_begin = 0;
  double total = 0.0;
  int m_used = 0;
  while (true) {
    FrequencySet fs = matsubara_set(g, T, p_begin, p_end);
    // Rule 0 isolates the last term for the tail check; rule 1 (which steers
    // the m termination) is the full sum.
    fs.w.insert(fs.w.begin(), std::vector<double>(fs.xi.size(), 0.0));
    fs.w[0].back() = fs.w[1].back();
    detail::BlockEngine engine(g, pair, tr, fs.xi);
    const MSum s = sum_over_m(engine, fs, m_fixed, m_tol, threads);
    m_used = std::max(m_used, s.m_used);
    total += s.values[1];
    ev.tail = total == 0.0 ? 0.0 : std::fabs(s.values[0] / total);
    if (p_fixed > 0 || ev.tail <= tail_tol) break;
    p_begin = p_end + 1;
    p_end = static_cast<int>(std::ceil(1.5 * p_end)) + 1;
  }
  ev.value = total;
  ev.m_used = m_used;
  ev.p_max = p_end;
  ev.nodes = p_end + 1;
  return ev;
}

void check_inputs(const Geometry& g, const BoundaryPair& pair, const ConvergenceSpec& spec) {
  g.validate();
  pair.validate();
  spec.validate();
}

struct Adaptive {
  ResultRecord record;
  detail::Truncation trunc;
  int n = 0;        // GL points per panel (T = 0)
  int m_used = 0;
  TLayout layout;
};

Adaptive adaptive_t0(const Geometry& g, const BoundaryPair& pair, const ConvergenceSpec& spec) {
  check_inputs(g, pair, spec);
  const double m_tol = m_tolerance(spec.rel_tol);
  int l = spec.l_max_initial > 0 ? spec.l_max_initial : std::min(initial_l_max(g), spec.l_max_cap);
  const TLayout lay = t_layout(g);

  int n = spec.quad_points_initial;
  double value = 0.0, quad_err = 0.0;
  int m_used = 0;
  while (true) {
    const int n2 = std::min(2 * n, spec.quad_points_cap);
    const auto v = eval_t0(g, pair, truncation_for(g, l), lay, {n, n2}, -1, m_tol, spec.threads, m_used);
    quad_err = rel_change(v[0], v[1]);
    if (quad_err <= spec.rel_tol) {
      // n itself is good enough; keep it for the l_max escalation.
      value = v[0];
      break;
    }
    value = v[1];
    n = n2;
    if (n >= spec.quad_points_cap) {
      throw NonConvergedError("frequency quadrature did not converge", value, quad_err);
    }
  }

  // Unmeasured until the first escalation; the last step lands on the cap.
  double l_err = std::numeric_limits<double>::infinity();
  while (true) {
    if (l >= spec.l_max_cap) {
      throw NonConvergedError("l_max cap reached before convergence", value, l_err + quad_err);
    }
    const int l2 = std::min(static_cast<int>(std::ceil(1.5 * l)), spec.l_max_cap);
    int m2 = 0;
    const auto v = eval_t0(g, pair, truncation_for(g, l2), lay, {n}, -1, m_tol, spec.threads, m2);
    l_err = rel_change(v[0], value);
    value = v[0];
    l = l2;
    m_used = m2;
    if (l_err <= spec.rel_tol) break;
  }

  Adaptive a;
  a.record.value = value;
  a.record.kind = Kind::EnergyT0;
  a.record.geometry = g;
  a.record.pair = pair;
  a.record.temperature = 0.0;
  a.record.l_max_used = l;
  a.record.quad_points_used = t_rule_size(lay, n);
  a.record.p_max_used = 0;
  a.record.est_rel_err = quad_err + l_err;
  a.trunc = truncation_for(g, l);
  a.n = n;
  a.m_used = m_used;
  a.layout = lay;
  return a;
}

Adaptive adaptive_matsubara(const Geometry& g, const BoundaryPair& pair, double T, const ConvergenceSpec& spec) {
  check_inputs(g, pair, spec);
  if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("temperature must be positive");
  const double m_tol = m_tolerance(spec.rel_tol);
  int l = spec.l_max_initial > 0 ? spec.l_max_initial : std::min(initial_l_max(g), spec.l_max_cap);

  Evaluated ev = eval_matsubara(g, pair, truncation_for(g, l), T, 0, spec.matsubara_tail_tol, -1, m_tol, spec.threads);
  double l_err = std::numeric_limits<double>::infinity();
  while (true) {
    if (l >= spec.l_max_cap) {
      throw NonConvergedError("l_max cap reached before convergence", ev.value, l_err + ev.tail);
    }
    const int l2 = std::min(static_cast<int>(std::ceil(1.5 * l)), spec.l_max_cap);
    Evaluated e2 = eval_matsubara(g, pair, truncation_for(g, l2), T, ev.p_max, spec.matsubara_tail_tol, -1, m_tol,
                                  spec.threads);
    l_err = rel_change(e2.value, ev.value);
    e2.tail = ev.tail;
    ev = e2;
    l = l2;
    if (l_err <= spec.rel_tol) break;
  }

  Adaptive a;
  a.record.value = ev.value;
  a.record.kind = Kind::FreeEnergy;
  a.record.geometry = g;
  a.record.pair = pair;
  a.record.temperature = T;
  a.record.l_max_used = l;
  a.record.quad_points_used = ev.nodes;
  a.record.p_max_used = ev.p_max;
  a.record.est_rel_err = l_err + ev.tail;
  a.trunc = truncation_for(g, l);
  a.m_used = ev.m_used;
  return a;
}

}  // namespace

double trace_over_m(double xi, int l_max, const Geometry& g, const BoundaryPair& pair) {
  g.validate();
  pair.validate();
  if (!(xi > 0.0)) throw DomainError("trace_over_m: frequency must be positive");
  detail::BlockEngine engine(g, pair, truncation_for(g, l_max), {xi});
  FrequencySet fs{{xi}, {{1.0}}};
  return sum_over_m(engine, fs, -1, 1e-14, 1).values[0];
}

ResultRecord energy_T0(const Geometry& g, const BoundaryPair& pair, const ConvergenceSpec& spec) {
  return adaptive_t0(g, pair, spec).record;
}

ResultRecord free_energy(const Geometry& g, const BoundaryPair& pair, double T, const ConvergenceSpec& spec) {
  return adaptive_matsubara(g, pair, T, spec).record;
}

ResultRecord force(const Geometry& g, const BoundaryPair& pair, double T, const ConvergenceSpec& spec) {
  const Adaptive central = T > 0.0 ? adaptive_matsubara(g, pair, T, spec) : adaptive_t0(g, pair, spec);
  const double d = g.d();
  const double h = 1e-3 * d;
  double e[5] = {0, 0, 0, 0, 0};
  for (int s : {-2, -1, 1, 2}) {
    const Geometry gs = g.with_gap(d + s * h);
    double v = 0.0;
    if (T > 0.0) {
      v = eval_matsubara(gs, pair, central.trunc, T, central.record.p_max_used, spec.matsubara_tail_tol,
                         central.m_used, 0.0, spec.threads)
              .value;
    } else {
      int m_used = 0;
      v = eval_t0(gs, pair, central.trunc, central.layout, {central.n}, central.m_used, 0.0, spec.threads, m_used)[0];
    }
    e[s + 2] = v;
  }
  const double f5 = -(e[0] - 8.0 * e[1] + 8.0 * e[3] - e[4]) / (12.0 * h);
  const double f3 = -(e[3] - e[1]) / (2.0 * h);
  ResultRecord r = central.record;
  r.kind = Kind::Force;
  r.value = f5;
  r.est_rel_err = central.record.est_rel_err + rel_change(f5, f3);
  return r;
}

ResultRecord evaluate_at(const Geometry& g, const BoundaryPair& pair, double T, const Resolution& res, int threads) {
  g.validate();
  pair.validate();
  if (res.l_max < 1) throw ValidationError("evaluate_at: l_max must be positive");
  if (threads < 1) throw ValidationError("threads must be at least 1");
  const auto tr = truncation_for(g, res.l_max, res.lt_max);
  ResultRecord r;
  r.geometry = g;
  r.pair = pair;
  r.temperature = T;
  r.l_max_used = res.l_max;
  const double m_tol = 1e-10;
  if (T > 0.0) {
    const Evaluated ev = eval_matsubara(g, pair, tr, T, res.p_max, 1e-9, -1, m_tol, threads);
    r.kind = Kind::FreeEnergy;
    r.value = ev.value;
    r.quad_points_used = ev.nodes;
    r.p_max_used = ev.p_max;
    r.est_rel_err = ev.tail;
  } else {
    int m_used = 0;
    const TLayout lay = t_layout(g);
    r.kind = Kind::EnergyT0;
    r.value = eval_t0(g, pair, tr, lay, {res.quad_points}, -1, m_tol, threads, m_used)[0];
    r.quad_points_used = t_rule_size(lay, res.quad_points);
  }
  return r;
}

}  // namespace casimir
