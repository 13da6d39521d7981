#include "casimir/round_trip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "block_engine.hpp"
#include "casimir/errors.hpp"
#include "casimir/special_functions.hpp"

namespace casimir {

namespace detail {

HalfTransitions scalar_transitions(int l_max, double xi, double r, const Condition& c, bool regular_form) {
  const double x = xi * r;
  const auto t = special::half_order_bessel(l_max, x);
  HalfTransitions h;
  const auto n = static_cast<std::size_t>(l_max) + 1;
  h.half_ln.resize(n);
  h.sign.assign(n, 1);
  const bool robin = c.kind == Condition::Kind::Robin;
  for (int l = 0; l <= l_max; ++l) {
    double ln = t.ln_i_scaled[l] - t.ln_k_scaled[l] + 2.0 * x;  // ln(I/K)
    int sign = 1;
    if (robin) {
      // u + x I'/I = alpha + l + x I_{l+3/2}/I_{l+1/2}; written this way the
      // Neumann l = 0 case (~ x^2 / 3) keeps full relative accuracy.
      const double di = c.alpha + l + x * t.i_ratio[l];
      const double dk = c.alpha + l - x * t.k_ratio[l];
      const double den = regular_form ? dk : di;
      const double den_scale = std::fabs(c.alpha) + l + x * (regular_form ? t.k_ratio[l] : t.i_ratio[l]);
      if (std::fabs(den) <= 1e-13 * den_scale) throw SingularTransitionError(l, xi);
      if (di == 0.0 || dk == 0.0) {
        sign = 0;
      } else {
        ln += std::log(std::fabs(di)) - std::log(std::fabs(dk));
        sign = (di > 0.0) == (dk > 0.0) ? 1 : -1;
      }
    }
    if (!regular_form) ln = -ln;
    h.half_ln[l] = sign == 0 ? -std::numeric_limits<double>::infinity() : 0.5 * ln;
    h.sign[l] = sign;
  }
  return h;
}

namespace {

void negate(HalfTransitions& h) {
  for (int& s : h.sign) s = -s;
}

void em_transitions(int l_max, double xi, double r, const Condition& c, bool regular_form,
                    HalfTransitions out[2]) {
  auto d = scalar_transitions(l_max, xi, r, Condition::dirichlet(), regular_form);
  auto rr = scalar_transitions(l_max, xi, r, Condition::robin(1.0), regular_form);
  if (c.kind == Condition::Kind::PEC) {
    out[0] = std::move(d);
    out[1] = std::move(rr);
    negate(out[1]);
  } else {
    out[0] = std::move(rr);
    out[1] = std::move(d);
    negate(out[1]);
  }
}

// Target absolute accuracy of W diag W^T entries, e^-41.5 ~ 1e-18.
constexpr double kLnAbsoluteAccuracy = -41.5;

double materialize(double v, double ln_factor) {
  if (v == 0.0) return 0.0;
  if (ln_factor < 700.0) {
    const double r = v * std::exp(ln_factor);
    if (std::isfinite(r)) return r;
  }
  const double ln = std::log(std::fabs(v)) + ln_factor;
  if (ln > 709.0) {
    throw TruncationOverflowError(
        "round-trip block entry overflows after balancing; reduce xi L or the truncation");
  }
  return std::copysign(std::exp(ln), v);
}

}  // namespace

BlockEngine::BlockEngine(const Geometry& g, const BoundaryPair& pair, Truncation t, std::vector<double> xis)
    : g_(g), pair_(pair), trunc_(t), xis_(std::move(xis)) {
  g_.validate();
  pair_.validate();
  em_ = pair_.field == FieldType::EM;
  interior_ = g_.mode == Mode::Interior;
  if (trunc_.lt_max < trunc_.l_max) trunc_.lt_max = trunc_.l_max;
  const int jmax = trunc_.l_max + trunc_.lt_max;

  tables_.resize(xis_.size());
  z_step_t_.assign((static_cast<std::size_t>(jmax) + 1) * xis_.size(), 0.0);
  for (std::size_t k = 0; k < xis_.size(); ++k) {
    const double xi = xis_[k];
    if (!(xi > 0.0)) throw DomainError("frequency must be positive");
    XiTables& tb = tables_[k];
    tb.xi = xi;
    const double xl = xi * g_.L;
    tb.ln_pref = 0.5 * std::log(std::numbers::pi / (2.0 * xl));
    const auto z = special::half_order_bessel(jmax, xl);
    tb.ln_z = interior_ ? z.ln_i : z.ln_k;
    tb.z_step.assign(static_cast<std::size_t>(jmax) + 1, 0.0);
    for (int j = 0; j <= jmax; ++j) {
      if (interior_) {
        if (j + 2 <= jmax) tb.z_step[j] = z.i_ratio[j] * z.i_ratio[j + 1];
      } else if (j >= 2) {
        tb.z_step[j] = 1.0 / (z.k_ratio[j - 2] * z.k_ratio[j - 1]);
      }
    }
    for (int j = 0; j <= jmax; ++j) z_step_t_[static_cast<std::size_t>(j) * xis_.size() + k] = tb.z_step[j];
    if (em_) {
      em_transitions(trunc_.l_max, xi, g_.r_A, pair_.cond_A, true, tb.a);
      em_transitions(trunc_.lt_max, xi, g_.r_B, pair_.cond_B, !interior_, tb.b);
    } else {
      tb.a[0] = scalar_transitions(trunc_.l_max, xi, g_.r_A, pair_.cond_A, true);
      tb.b[0] = scalar_transitions(trunc_.lt_max, xi, g_.r_B, pair_.cond_B, !interior_);
    }
  }
}

void BlockEngine::build_w(int m, std::size_t k_begin, std::size_t k_end, std::vector<Eigen::MatrixXd>& w) const {
  const int lmin = l_min(m);
  const int n_a = trunc_.l_max - lmin + 1;
  const int n_b = trunc_.lt_max - lmin + 1;
  const int npol = em_ ? 2 : 1;
  w.resize(k_end - k_begin);
  for (auto& mat : w) mat.setZero(npol * n_a, npol * n_b);

  // Per (l, lt): the 3j-independent size data of the l'' sum.
  struct PairBound {
    int j0, count;
    double bound;    // max |coefficient| * (1 + max |Lambda|)
    double lam_mix;  // m / sqrt(l(l+1) lt(lt+1))
    double ln_bound_count;
  };
  auto pair_bound = [&](int l, int lt) {
    PairBound pb;
    const int jlo = std::abs(l - lt), jhi = l + lt;
    pb.j0 = interior_ ? jlo : jhi;
    pb.count = (jhi - jlo) / 2 + 1;
    const double pre = std::sqrt((2.0 * l + 1.0) * (2.0 * lt + 1.0));
    double lam_bound = 0.0;
    pb.lam_mix = 0.0;
    if (em_) {
      const double q = 0.5 * (l * (l + 1.0) + lt * (lt + 1.0));
      const double sq = std::sqrt(l * (l + 1.0) * lt * (lt + 1.0));
      lam_bound = std::max(std::fabs(0.5 * jlo * (jlo + 1.0) - q), std::fabs(0.5 * jhi * (jhi + 1.0) - q)) / sq;
      pb.lam_mix = m / sq;
    }
    pb.bound = pre * (1.0 + lam_bound);
    pb.ln_bound_count = std::log(pb.bound * pb.count);
    return pb;
  };
  // ln of an upper bound on |W_{l,lt}| at one frequency: the Z ratios never
  // exceed 1 and |coefficient| <= sqrt((2l+1)(2lt+1)).
  auto ln_entry_bound = [&](const PairBound& pb, const XiTables& tb, int l, int lt) {
    const double base = tb.ln_z[pb.j0] + tb.ln_pref;
    double ln_scale = base + tb.a[0].half_ln[l] + tb.b[0].half_ln[lt];
    double mix = 0.0;
    if (em_) {
      for (int p = 0; p < 2; ++p)
        for (int pq = 0; pq < 2; ++pq) ln_scale = std::max(ln_scale, base + tb.a[p].half_ln[l] + tb.b[pq].half_ln[lt]);
      mix = std::log1p(std::fabs(pb.lam_mix) * tb.xi * g_.L);
    }
    return ln_scale + pb.ln_bound_count + mix;
  };

  // The determinant sees W only through W diag W^T, so an absolute error e in
  // an entry matters as e * max|W| * (number of columns). The drop threshold
  // for each frequency follows from the largest bound among its entries.
  std::vector<double> ln_drop(k_end - k_begin, -std::numeric_limits<double>::infinity());
  for (int l = lmin; l <= trunc_.l_max; ++l) {
    for (int lt = lmin; lt <= trunc_.lt_max; ++lt) {
      const PairBound pb = pair_bound(l, lt);
      for (std::size_t kx = k_begin; kx < k_end; ++kx) {
        ln_drop[kx - k_begin] = std::max(ln_drop[kx - k_begin], ln_entry_bound(pb, tables_[kx], l, lt));
      }
    }
  }
  const double ln_cols = std::log(static_cast<double>(npol * n_b));
  for (double& v : ln_drop) v = kLnAbsoluteAccuracy - std::max(v, 0.0) - ln_cols;

  std::vector<double> f0, fm, coef, lam;
  struct Live {
    std::vector<std::size_t> kx;
    std::vector<double> stop, r, s0, s1;
  } live;
  const std::size_t nk = k_end - k_begin;
  live.kx.resize(nk);
  live.stop.resize(nk);
  live.r.resize(nk);
  live.s0.resize(nk);
  live.s1.resize(nk);
  for (int l = lmin; l <= trunc_.l_max; ++l) {
    for (int lt = lmin; lt <= trunc_.lt_max; ++lt) {
      const PairBound pb = pair_bound(l, lt);
      bool needed = false;
      for (std::size_t kx = k_begin; kx < k_end && !needed; ++kx) {
        needed = ln_entry_bound(pb, tables_[kx], l, lt) >= ln_drop[kx - k_begin];
      }
      if (!needed) continue;

      special::wigner3j_m_range(l, lt, 0, f0);
      if (m != 0) special::wigner3j_m_range(l, lt, m, fm);
      const std::vector<double>& g = m == 0 ? f0 : fm;

      const int jlo = std::abs(l - lt);
      const int count = pb.count;
      const int j0 = pb.j0;
      const int dj = interior_ ? 2 : -2;
      const double pre = std::sqrt((2.0 * l + 1.0) * (2.0 * lt + 1.0));
      coef.resize(static_cast<std::size_t>(count));
      lam.assign(static_cast<std::size_t>(count), 0.0);
      const double q = 0.5 * (l * (l + 1.0) + lt * (lt + 1.0));
      const double sq = em_ ? std::sqrt(l * (l + 1.0) * lt * (lt + 1.0)) : 1.0;
      for (int k = 0; k < count; ++k) {
        const int j = j0 + dj * k;
        const auto idx = static_cast<std::size_t>(j - jlo);
        coef[k] = pre * (2.0 * j + 1.0) * f0[idx] * g[idx];
        if (em_) lam[k] = (0.5 * j * (j + 1.0) - q) / sq;
      }

      const int ia = l - lmin;
      const int ib = lt - lmin;
      auto store = [&](std::size_t kx, double s0, double s1) {
        const XiTables& tb = tables_[kx];
        const double base = tb.ln_z[j0] + tb.ln_pref;
        Eigen::MatrixXd& mat = w[kx - k_begin];
        if (!em_) {
          mat(ia, ib) = materialize(s0, base + tb.a[0].half_ln[l] + tb.b[0].half_ln[lt]);
          return;
        }
        const double mix = pb.lam_mix * tb.xi * g_.L * s0;
        for (int p = 0; p < 2; ++p) {
          for (int pq = 0; pq < 2; ++pq) {
            const double v = p == pq ? s1 : mix;
            mat(2 * ia + p, 2 * ib + pq) = materialize(v, base + tb.a[p].half_ln[l] + tb.b[pq].half_ln[lt]);
          }
        }
      };

      // All frequencies advance through the l'' sum together; a frequency
      // leaves once its running Z ratio drops below its own stop level.
      std::size_t n_live = 0;
      for (std::size_t kx = k_begin; kx < k_end; ++kx) {
        const double ln_all = ln_entry_bound(pb, tables_[kx], l, lt);
        const double ln_drop_k = ln_drop[kx - k_begin];
        if (ln_all < ln_drop_k) continue;
        live.kx[n_live] = kx;
        live.stop[n_live] = std::exp(ln_drop_k - ln_all);
        live.r[n_live] = 1.0;
        live.s0[n_live] = coef[0];
        live.s1[n_live] = coef[0] * lam[0];
        ++n_live;
      }
      for (int k = 1; k < count && n_live > 0; ++k) {
        const int j = j0 + dj * k;
        const double* zrow = &z_step_t_[static_cast<std::size_t>(interior_ ? j - 2 : j + 2) * xis_.size()];
        const double c = coef[k];
        if (em_) {
          const double lk = lam[k];
          for (std::size_t a = 0; a < n_live; ++a) {
            live.r[a] *= zrow[live.kx[a]];
            const double t = c * live.r[a];
            live.s0[a] += t;
            live.s1[a] += t * lk;
          }
        } else {
          for (std::size_t a = 0; a < n_live; ++a) {
            live.r[a] *= zrow[live.kx[a]];
            live.s0[a] += c * live.r[a];
          }
        }
        if ((k & 3) == 0 || k + 1 == count) {
          std::size_t keep = 0;
          for (std::size_t a = 0; a < n_live; ++a) {
            if (live.r[a] < live.stop[a] || k + 1 == count) {
              store(live.kx[a], live.s0[a], live.s1[a]);
            } else {
              live.kx[keep] = live.kx[a];
              live.stop[keep] = live.stop[a];
              live.r[keep] = live.r[a];
              live.s0[keep] = live.s0[a];
              live.s1[keep] = live.s1[a];
              ++keep;
            }
          }
          n_live = keep;
        }
      }
      for (std::size_t a = 0; a < n_live; ++a) store(live.kx[a], live.s0[a], live.s1[a]);
    }
  }
}

void BlockEngine::sign_vectors(int m, std::size_t k, Eigen::VectorXd& da, Eigen::VectorXd& db) const {
  const int lmin = l_min(m);
  const int npol = em_ ? 2 : 1;
  const XiTables& tb = tables_[k];
  da.resize(npol * (trunc_.l_max - lmin + 1));
  db.resize(npol * (trunc_.lt_max - lmin + 1));
  for (int l = lmin; l <= trunc_.l_max; ++l) {
    for (int p = 0; p < npol; ++p) da(npol * (l - lmin) + p) = tb.a[p].sign[l];
  }
  for (int l = lmin; l <= trunc_.lt_max; ++l) {
    for (int p = 0; p < npol; ++p) db(npol * (l - lmin) + p) = tb.b[p].sign[l];
  }
}

double logdet_one_minus_dense(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  Eigen::MatrixXd b = -a;
  b.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  const Eigen::MatrixXd& f = lu.matrixLU();
  double ln = 0.0;
  int sign = static_cast<int>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = f(i, i);
    if (!(u != 0.0) || !std::isfinite(u)) throw SpectralRadiusError("det(1 - M) vanishes or is not finite");
    if (u < 0.0) sign = -sign;
    ln += std::log(std::fabs(u));
  }
  if (sign <= 0) throw SpectralRadiusError("det(1 - M) is negative: truncated round trip is not a contraction");
  return ln;
}

double BlockEngine::logdet_from_w(const Eigen::MatrixXd& w, const Eigen::VectorXd& da,
                                  const Eigen::VectorXd& db) const {
  const Eigen::Index n = w.rows();
  if (n == 0) return 0.0;
  // Y = W diag(db) W^T as a difference of two symmetric rank updates.
  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index j = 0; j < db.size(); ++j) {
    if (db(j) > 0.0) pos.push_back(j);
    else if (db(j) < 0.0) neg.push_back(j);
  }
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  if (neg.empty() && static_cast<Eigen::Index>(pos.size()) == w.cols()) {
    y.selfadjointView<Eigen::Lower>().rankUpdate(w, 1.0);
  } else {
    if (!pos.empty()) {
      Eigen::MatrixXd wp = w(Eigen::all, pos);
      y.selfadjointView<Eigen::Lower>().rankUpdate(wp, 1.0);
    }
    if (!neg.empty()) {
      Eigen::MatrixXd wn = w(Eigen::all, neg);
      y.selfadjointView<Eigen::Lower>().rankUpdate(wn, -1.0);
    }
  }
  y.triangularView<Eigen::StrictlyUpper>() = y.transpose();

  if ((da.array() > 0.0).all()) {
    Eigen::MatrixXd b = -y;
    b.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() == Eigen::Success) {
      return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    }
    return logdet_one_minus_dense(y);
  }
  return logdet_one_minus_dense(da.asDiagonal() * y);
}

void BlockEngine::logdets(int m, std::span<double> out) const {
  if (out.size() != xis_.size()) throw DomainError("logdets: output size mismatch");
  if (m < 0) m = -m;
  if (m > trunc_.l_max) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  // Bound the working set of W matrices.
  const int npol = em_ ? 2 : 1;
  const double per = 8.0 * npol * npol * (trunc_.l_max - l_min(m) + 1.0) * (trunc_.lt_max - l_min(m) + 1.0);
  const auto chunk = static_cast<std::size_t>(std::clamp(256e6 / per, 1.0, 1e6));
  std::vector<Eigen::MatrixXd> w;
  Eigen::VectorXd da, db;
  for (std::size_t k0 = 0; k0 < xis_.size(); k0 += chunk) {
    const std::size_t k1 = std::min(xis_.size(), k0 + chunk);
    build_w(m, k0, k1, w);
    for (std::size_t k = k0; k < k1; ++k) {
      sign_vectors(m, k, da, db);
      out[k] = logdet_from_w(w[k - k0], da, db);
    }
  }
}

BlockMatrix BlockEngine::block(int m, std::size_t k) const {
  if (m < 0) m = -m;
  std::vector<Eigen::MatrixXd> w;
  build_w(m, k, k + 1, w);
  const Eigen::MatrixXd& wm = w[0];
  const int lmin = l_min(m);
  const int npol = em_ ? 2 : 1;
  const XiTables& tb = tables_[k];

  Eigen::VectorXd sa(wm.rows()), sb(wm.cols());
  for (int l = lmin; l <= trunc_.l_max; ++l)
    for (int p = 0; p < npol; ++p) sa(npol * (l - lmin) + p) = tb.a[p].sign[l];
  for (int l = lmin; l <= trunc_.lt_max; ++l)
    for (int p = 0; p < npol; ++p) sb(npol * (l - lmin) + p) = tb.b[p].sign[l];
  // M' = sA W sB W^T
  const Eigen::MatrixXd mp = sa.asDiagonal() * wm * sb.asDiagonal() * wm.transpose();

  BlockMatrix out;
  out.m = m;
  out.l_min = lmin;
  out.l_max = trunc_.l_max;
  out.em = em_;
  out.dim = static_cast<int>(mp.rows());
  out.entries.resize(static_cast<std::size_t>(out.dim) * out.dim);
  out.ln_scale.resize(out.dim);
  out.parity.resize(out.dim);
  for (int i = 0; i < out.dim; ++i) {
    const int l = lmin + i / npol;
    out.ln_scale[i] = tb.a[i % npol].half_ln[l];
    out.parity[i] = (l % 2 == 0) ? 1 : -1;
    for (int j = 0; j < out.dim; ++j) {
      const double v = mp(i, j);
      if (!std::isfinite(v)) throw TruncationOverflowError("non-finite balanced block entry");
      out.entries[static_cast<std::size_t>(i) * out.dim + j] = v;
    }
  }
  return out;
}

}  // namespace detail

LogScaled BlockMatrix::unbalanced(int i, int j) const {
  auto v = LogScaled::from_double((*this)(i, j));
  v.ln_abs += ln_scale[i] - ln_scale[j];
  v.sign *= parity[i] * parity[j];
  return v;
}

namespace {

LogScaled from_half(const detail::HalfTransitions& h, int l) {
  if (h.sign[l] == 0) return LogScaled::zero();
  return LogScaled::from_log(2.0 * h.half_ln[l], h.sign[l]);
}

void require_scalar(const Condition& c) {
  if (!c.is_scalar()) throw ValidationError("scalar transition needs a Dirichlet or Robin condition");
}

void require_em(const Condition& c) {
  if (c.is_scalar()) throw ValidationError("EM transition needs a PEC or permeable condition");
}

void require_xi(double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("frequency must be positive and finite");
}

}  // namespace

LogScaled transition_A(int l, double xi, const Geometry& g, const Condition& c) {
  require_scalar(c);
  require_xi(xi);
  return from_half(detail::scalar_transitions(l, xi, g.r_A, c, true), l);
}

LogScaled transition_B(int l, double xi, const Geometry& g, const Condition& c) {
  require_scalar(c);
  require_xi(xi);
  return from_half(detail::scalar_transitions(l, xi, g.r_B, c, g.mode == Mode::Exterior), l);
}

PolarizedTransition em_transition_A(int l, double xi, const Geometry& g, const Condition& c) {
  require_em(c);
  require_xi(xi);
  detail::HalfTransitions t[2];
  detail::em_transitions(l, xi, g.r_A, c, true, t);
  return {from_half(t[0], l), from_half(t[1], l)};
}

PolarizedTransition em_transition_B(int l, double xi, const Geometry& g, const Condition& c) {
  require_em(c);
  require_xi(xi);
  detail::HalfTransitions t[2];
  detail::em_transitions(l, xi, g.r_B, c, g.mode == Mode::Exterior, t);
  return {from_half(t[0], l), from_half(t[1], l)};
}

LogScaled translation_element_log(int l, int lt, int m, double xi, const Geometry& g) {
  require_xi(xi);
  if (std::abs(m) > std::min(l, lt)) throw DomainError("translation element needs l, lt >= |m|");
  const double xl = xi * g.L;
  const auto z = special::half_order_bessel(l + lt, xl);
  const auto& ln_z = g.mode == Mode::Interior ? z.ln_i : z.ln_k;
  std::vector<double> f0, fm;
  special::wigner3j_m_range(l, lt, 0, f0);
  special::wigner3j_m_range(l, lt, m, fm);
  const int jlo = std::abs(l - lt);
  const double pre = std::sqrt((2.0 * l + 1.0) * (2.0 * lt + 1.0));
  LogScaled sum;
  for (int j = jlo; j <= l + lt; j += 2) {
    const auto idx = static_cast<std::size_t>(j - jlo);
    const double c = pre * (2.0 * j + 1.0) * f0[idx] * fm[idx];
    sum += LogScaled::from_double(c) * LogScaled::from_log(ln_z[j]);
  }
  sum *= LogScaled::from_log(0.5 * std::log(std::numbers::pi / (2.0 * xl)));
  if ((l + m) % 2 != 0) sum = -sum;
  return sum;
}

double translation_element(int l, int lt, int m, double xi, const Geometry& g) {
  return translation_element_log(l, lt, m, xi, g).value();
}

int default_lt_max(int l_max, const Geometry& g) {
  // Sphere B needs multipoles up to about l r_B / r_A (interior) or
  // l (r_A + r_B) / r_A (exterior) to resolve what A sends across the gap.
  const double ratio = g.mode == Mode::Interior ? std::max(1.0, g.r_B / g.r_A) : 1.0 + g.r_B / g.r_A;
  return static_cast<int>(std::ceil(l_max * ratio)) + 10;
}

namespace {

BlockMatrix assemble(int m, double xi, int l_max, const Geometry& g, const BoundaryPair& pair, int lt_max) {
  require_xi(xi);
  const int lmin = pair.field == FieldType::EM ? std::max(1, std::abs(m)) : std::abs(m);
  if (l_max < lmin) throw DomainError("l_max below the smallest multipole of the block");
  if (lt_max <= 0) lt_max = default_lt_max(l_max, g);
  detail::BlockEngine engine(g, pair, {l_max, lt_max}, {xi});
  auto b = engine.block(std::abs(m), 0);
  b.m = m;
  return b;
}

}  // namespace

BlockMatrix assemble_scalar_block(int m, double xi, int l_max, const Geometry& g, const BoundaryPair& pair,
                                  int lt_max) {
  if (pair.field != FieldType::Scalar) throw ValidationError("assemble_scalar_block needs a scalar pair");
  return assemble(m, xi, l_max, g, pair, lt_max);
}

BlockMatrix assemble_em_block(int m, double xi, int l_max, const Geometry& g, const BoundaryPair& pair,
                              int lt_max) {
  if (pair.field != FieldType::EM) throw ValidationError("assemble_em_block needs an EM pair");
  return assemble(m, xi, l_max, g, pair, lt_max);
}

}  // namespace casimir
