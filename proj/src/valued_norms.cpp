#include "nclp/valued_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nclp/parallel.hpp"
#include "nclp/random.hpp"
#include "nclp/separating.hpp"

namespace nclp {

namespace {

// Stacked per-site form of a factorization: at each site, A is the
// (m n) x (K n) matrix [a_ik] and B the (K n) x (m n) matrix [b_kj], so the
// constraint is A(s) B(s) = X(s) with X the assembled family.
struct Stacked {
  int inner = 0;
  std::vector<Matrix> a;
  std::vector<Matrix> b;
};

Stacked stack_factorization(const AlgebraSpec& base, const Factorization& f) {
  Stacked st;
  st.inner = f.inner;
  for (int s = 0; s < base.site_count(); ++s) {
    int n = base.site(s).n;
    Matrix as = Matrix::Zero(f.m * n, f.inner * n);
    Matrix bs = Matrix::Zero(f.inner * n, f.m * n);
    for (int i = 0; i < f.m; ++i)
      for (int k = 0; k < f.inner; ++k)
        as.block(i * n, k * n, n, n) = f.a[static_cast<size_t>(i * f.inner + k)].at(s);
    for (int k = 0; k < f.inner; ++k)
      for (int j = 0; j < f.m; ++j)
        bs.block(k * n, j * n, n, n) = f.b[static_cast<size_t>(k * f.m + j)].at(s);
    st.a.push_back(std::move(as));
    st.b.push_back(std::move(bs));
  }
  return st;
}

Factorization unstack(const AlgebraSpec& base, int m, const Stacked& st) {
  Factorization f;
  f.m = m;
  f.inner = st.inner;
  f.a.assign(static_cast<size_t>(m * st.inner), Element::zero(base));
  f.b.assign(static_cast<size_t>(st.inner * m), Element::zero(base));
  for (int s = 0; s < base.site_count(); ++s) {
    int n = base.site(s).n;
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < st.inner; ++k)
        f.a[static_cast<size_t>(i * st.inner + k)].at(s) =
            st.a[static_cast<size_t>(s)].block(i * n, k * n, n, n);
    for (int k = 0; k < st.inner; ++k)
      for (int j = 0; j < m; ++j)
        f.b[static_cast<size_t>(k * m + j)].at(s) =
            st.b[static_cast<size_t>(s)].block(k * n, j * n, n, n);
  }
  return f;
}

double trace_power(const Matrix& psd, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(psd, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    sum += std::pow(std::max(es.eigenvalues()(i), 0.0), p);
  return sum;
}

struct AmEval {
  double value = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> u, v;  // per-site weighted trace powers of the two factors
};

AmEval evaluate(const AlgebraSpec& base, int m, double p, const std::vector<Matrix>& big,
                const Stacked& st) {
  AmEval ev;
  ev.u.resize(static_cast<size_t>(base.site_count()));
  ev.v.resize(static_cast<size_t>(base.site_count()));
  double res2 = 0.0;
  double su = 0.0, sv = 0.0;
  for (int s = 0; s < base.site_count(); ++s) {
    int n = base.site(s).n;
    double mu = base.site(s).weight;
    const Matrix& as = st.a[static_cast<size_t>(s)];
    const Matrix& bs = st.b[static_cast<size_t>(s)];
    Matrix pa = Matrix::Zero(n, n);
    for (int i = 0; i < m; ++i)
      pa += as.middleRows(i * n, n) * as.middleRows(i * n, n).adjoint();
    Matrix pb = Matrix::Zero(n, n);
    for (int j = 0; j < m; ++j)
      pb += bs.middleCols(j * n, n).adjoint() * bs.middleCols(j * n, n);
    ev.u[static_cast<size_t>(s)] = mu * trace_power(pa, p);
    ev.v[static_cast<size_t>(s)] = mu * trace_power(pb, p);
    su += ev.u[static_cast<size_t>(s)];
    sv += ev.v[static_cast<size_t>(s)];
    res2 += mu * (big[static_cast<size_t>(s)] - as * bs).squaredNorm();
  }
  ev.value = std::pow(su, 0.5 / p) * std::pow(sv, 0.5 / p);
  ev.residual = std::sqrt(res2);
  return ev;
}

// Optimal per-site scalar balance: replacing (A, B) by (g A, B / g) sitewise
// with g = (v/u)^(1/(4p)) turns the objective into (sum sqrt(u v))^(1/p),
// the minimum over all such gauge scalings. The single global scaling of
// both factors is the special case of equal site ratios.
void rebalance(const AlgebraSpec& base, double p, Stacked& st, const AmEval& ev) {
  for (int s = 0; s < base.site_count(); ++s) {
    double u = ev.u[static_cast<size_t>(s)];
    double v = ev.v[static_cast<size_t>(s)];
    if (u <= 1e-300 || v <= 1e-300) continue;
    double gamma = std::pow(v / u, 0.25 / p);
    st.a[static_cast<size_t>(s)] *= gamma;
    st.b[static_cast<size_t>(s)] /= gamma;
  }
}

struct AmRun {
  double value = std::numeric_limits<double>::infinity();
  Stacked best;
  int iterations = 0;
  bool converged = false;
  bool feasible = false;
};

AmRun run_alternating(const AlgebraSpec& base, int m, double p, const std::vector<Matrix>& big,
                      double xnorm, Stacked st, int max_iter) {
  AmRun run;
  double feas_tol = tol::fact * xnorm;
  auto consider = [&](const Stacked& cand, const AmEval& ev) {
    if (ev.residual <= feas_tol && ev.value < run.value) {
      run.value = ev.value;
      run.best = cand;
      run.feasible = true;
    }
  };

  AmEval ev = evaluate(base, m, p, big, st);
  rebalance(base, p, st, ev);
  ev = evaluate(base, m, p, big, st);
  consider(st, ev);

  double prev = ev.value;
  int stagnant = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    ++run.iterations;
    for (int s = 0; s < base.site_count(); ++s) {
      st.a[static_cast<size_t>(s)] =
          big[static_cast<size_t>(s)] * pseudo_inverse(st.b[static_cast<size_t>(s)]);
    }
    for (int s = 0; s < base.site_count(); ++s) {
      st.b[static_cast<size_t>(s)] =
          pseudo_inverse(st.a[static_cast<size_t>(s)]) * big[static_cast<size_t>(s)];
    }
    ev = evaluate(base, m, p, big, st);
    rebalance(base, p, st, ev);
    ev = evaluate(base, m, p, big, st);
    consider(st, ev);
    if (std::abs(prev - ev.value) <= 1e-13 * std::max(ev.value, 1e-300)) {
      if (++stagnant >= 2) {
        run.converged = true;
        break;
      }
    } else {
      stagnant = 0;
    }
    prev = ev.value;
  }
  return run;
}

Stacked polar_seed(const AlgebraSpec& base, int m, int inner, const std::vector<Matrix>& big) {
  Stacked st;
  st.inner = inner;
  for (int s = 0; s < base.site_count(); ++s) {
    int n = base.site(s).n;
    Eigen::JacobiSVD<Matrix> svd(big[static_cast<size_t>(s)],
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd root = svd.singularValues().cwiseMax(0.0).cwiseSqrt();
    Matrix as = Matrix::Zero(m * n, inner * n);
    Matrix bs = Matrix::Zero(inner * n, m * n);
    as.leftCols(m * n) = svd.matrixU() * root.asDiagonal();
    bs.topRows(m * n) = root.asDiagonal() * svd.matrixV().adjoint();
    st.a.push_back(std::move(as));
    st.b.push_back(std::move(bs));
  }
  return st;
}

Stacked random_seed(const AlgebraSpec& base, int m, int inner, const std::vector<Matrix>& big,
                    Rng rng) {
  Stacked st;
  st.inner = inner;
  for (int s = 0; s < base.site_count(); ++s) {
    int n = base.site(s).n;
    Matrix bs = random_ginibre(rng, inner * n, m * n);
    st.b.push_back(bs);
    st.a.push_back(big[static_cast<size_t>(s)] * pseudo_inverse(bs));
  }
  return st;
}

}  // namespace

S1Upper s1_norm_upper(const AmplifiedElement& x, Exponent p, const S1Options& opt) {
  int m = x.m;
  int inner = opt.inner_size > 0 ? std::max(opt.inner_size, m)
                                 : m * std::max(1, x.base.max_block_size());
  Element bigx = assemble(x);
  std::vector<Matrix> big;
  big.reserve(static_cast<size_t>(x.base.site_count()));
  for (int s = 0; s < x.base.site_count(); ++s) big.push_back(bigx.at(s));
  double xnorm = l2_norm(bigx);

  S1Upper out;
  if (xnorm <= 0.0) {
    out.value = 0.0;
    out.factorization = unstack(x.base, m, polar_seed(x.base, m, inner, big));
    out.converged = true;
    return out;
  }

  std::vector<Stacked> starts;
  starts.push_back(polar_seed(x.base, m, inner, big));
  Rng master(opt.seed);
  for (int r = 0; r < opt.restarts; ++r)
    starts.push_back(random_seed(x.base, m, inner, big, master.fork(static_cast<uint64_t>(r))));
  for (const Factorization& warm : opt.warm_starts) {
    if (warm.m == m) starts.push_back(stack_factorization(x.base, warm));
  }

  std::vector<AmRun> runs(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int i) {
    runs[static_cast<size_t>(i)] = run_alternating(x.base, m, p.value(), big, xnorm,
                                                   starts[static_cast<size_t>(i)], opt.max_iter);
  });

  int best = -1;
  for (size_t i = 0; i < runs.size(); ++i) {
    out.iterations += runs[i].iterations;
    if (!runs[i].feasible) continue;
    if (best < 0 || runs[i].value < runs[static_cast<size_t>(best)].value)
      best = static_cast<int>(i);
  }
  if (best < 0) throw Error("s1_norm_upper: no feasible factorization found");
  out.value = runs[static_cast<size_t>(best)].value;
  out.factorization = unstack(x.base, m, runs[static_cast<size_t>(best)].best);
  out.converged = runs[static_cast<size_t>(best)].converged;
  return out;
}

double s1_norm_lower(const AmplifiedElement& x, Exponent p) {
  double best = 0.0;
  for (const Element& e : x.entries) best = std::max(best, lp_norm(e, p));
  if (std::abs(p.value() - 1.0) < 1e-12) best = std::max(best, amplified_norm(x, p));
  return best;
}

double factorization_residual(const AmplifiedElement& x, const Factorization& f) {
  if (f.m != x.m) throw Error("factorization: amplification size mismatch");
  double res2 = 0.0;
  for (int i = 0; i < x.m; ++i) {
    for (int j = 0; j < x.m; ++j) {
      Element recon = Element::zero(x.base);
      for (int k = 0; k < f.inner; ++k)
        recon += f.a[static_cast<size_t>(i * f.inner + k)] * f.b[static_cast<size_t>(k * x.m + j)];
      double d = l2_dist(recon, x.entry(i, j));
      res2 += d * d;
    }
  }
  return std::sqrt(res2);
}

double factorization_value(const AmplifiedElement& x, const Factorization& f, Exponent p) {
  double xnorm = l2_norm(assemble(x));
  if (factorization_residual(x, f) > tol::fact * std::max(xnorm, 1e-300))
    throw Error("factorization: does not reproduce the target family");
  Element pa = Element::zero(x.base);
  for (const Element& a : f.a) pa += a * adjoint(a);
  Element pb = Element::zero(x.base);
  for (const Element& b : f.b) pb += adjoint(b) * b;
  return std::sqrt(lp_norm(pa, p) * lp_norm(pb, p));
}

Factorization transpose_transform(const Factorization& f) {
  Factorization g;
  g.m = f.m;
  g.inner = f.inner;
  g.a.reserve(f.a.size());
  g.b.reserve(f.b.size());
  for (int i = 0; i < f.m; ++i)
    for (int k = 0; k < f.inner; ++k)
      g.a.push_back(op_iso(f.b[static_cast<size_t>(k * f.m + i)]));
  for (int k = 0; k < f.inner; ++k)
    for (int j = 0; j < f.m; ++j)
      g.b.push_back(op_iso(f.a[static_cast<size_t>(j * f.inner + k)]));
  return g;
}

Factorization concatenate(const Factorization& f, const Factorization& g) {
  if (f.m != g.m) throw Error("concatenate: amplification size mismatch");
  Factorization h;
  h.m = f.m;
  h.inner = f.inner + g.inner;
  for (int i = 0; i < f.m; ++i) {
    for (int k = 0; k < f.inner; ++k) h.a.push_back(f.a[static_cast<size_t>(i * f.inner + k)]);
    for (int k = 0; k < g.inner; ++k) h.a.push_back(g.a[static_cast<size_t>(i * g.inner + k)]);
  }
  for (int k = 0; k < f.inner; ++k)
    for (int j = 0; j < f.m; ++j) h.b.push_back(f.b[static_cast<size_t>(k * f.m + j)]);
  for (int k = 0; k < g.inner; ++k)
    for (int j = 0; j < g.m; ++j) h.b.push_back(g.b[static_cast<size_t>(k * g.m + j)]);
  return h;
}

AmplifiedElement AmplifiedMap::apply(const AmplifiedElement& x) const {
  if (x.base != map.source) throw Error("amplified map: base algebra mismatch");
  if (x.m != m) throw Error("amplified map: amplification size mismatch");
  AmplifiedElement y = AmplifiedElement::zero(map.target, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) y.entry(i, j) = map.apply(x.entry(i, j));
  return y;
}

AmplifiedMap amplify_map(const LinearMap& map, int m, AmplifyKind kind) {
  if (m < 1) throw Error("amplify_map: m must be >= 1");
  return AmplifiedMap{map, m, kind};
}

AmplifiedElement matrix_unit_family(const AlgebraSpec& spec, int site, int m, bool swapped) {
  AmplifiedElement x = AmplifiedElement::zero(spec, m);
  int mu = std::min(m, spec.site(site).n);
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j)
      x.entry(i, j) = swapped ? Element::matrix_unit(spec, site, j, i)
                              : Element::matrix_unit(spec, site, i, j);
  return x;
}

AmplifiedElement pad_amplified(const AmplifiedElement& x, int m_new) {
  if (m_new < x.m) throw Error("pad_amplified: cannot shrink");
  AmplifiedElement y = AmplifiedElement::zero(x.base, m_new);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) y.entry(i, j) = x.entry(i, j);
  return y;
}

namespace {

AmplifiedElement scaled(const AmplifiedElement& x, double c) {
  return Complex(c, 0.0) * x;
}

struct AscentOut {
  double ratio = 0.0;
  AmplifiedElement witness;
  int iterations = 0;
  bool stalled = false;
};

// Maximizes ||L x||_p over ||x||_p = 1 by gradient ascent with step halving.
// The gradient of the spectral norm comes from the singular value expansion;
// near degeneracies at p < 2 a finite-difference direction is tried before
// giving up.
AscentOut ascend_ratio(const AmplifiedMap& lmap, const LinearMap& adj, AmplifiedElement x,
                       Exponent p, int max_iter) {
  AscentOut out;
  double nx = amplified_norm(x, p);
  if (nx <= 0.0) {
    out.witness = x;
    out.stalled = true;
    return out;
  }
  x = scaled(x, 1.0 / nx);
  AmplifiedMap adj_map{adj, lmap.m, lmap.kind};
  double fy = amplified_norm(lmap.apply(x), p);
  double eta = 0.2;
  bool fd_used = false;
  while (out.iterations < max_iter) {
    ++out.iterations;
    AmplifiedElement y = lmap.apply(x);
    Element ygrad = lp_norm_gradient(assemble(y), p);
    AmplifiedElement gx = adj_map.apply(disassemble(lmap.map.target, lmap.m, ygrad));
    Element xgrad = lp_norm_gradient(assemble(x), p);
    AmplifiedElement dir = gx + scaled(disassemble(lmap.map.source, lmap.m, xgrad), -fy);
    double dn = l2_norm(assemble(dir));
    if (dn <= 1e-12 * std::max(1.0, fy)) break;

    bool improved = false;
    double step = eta;
    while (step > 1e-13) {
      AmplifiedElement xn = x + scaled(dir, step);
      double nn = amplified_norm(xn, p);
      if (nn > 0.0) {
        xn = scaled(xn, 1.0 / nn);
        double fn = amplified_norm(lmap.apply(xn), p);
        if (fn > fy * (1.0 + 1e-13)) {
          x = std::move(xn);
          fy = fn;
          eta = std::min(step * 1.5, 10.0);
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) {
      if (!fd_used && p.value() < 2.0) {
        // Retry once with finite-difference gradients; the analytic formula
        // is a subgradient at p = 1 and can point along a degenerate face.
        fd_used = true;
        Element yg = lp_norm_gradient_fd(assemble(lmap.apply(x)), p);
        AmplifiedElement gx2 = adj_map.apply(disassemble(lmap.map.target, lmap.m, yg));
        Element xg = lp_norm_gradient_fd(assemble(x), p);
        AmplifiedElement dir2 = gx2 + scaled(disassemble(lmap.map.source, lmap.m, xg), -fy);
        double step2 = 1e-3;
        bool improved2 = false;
        while (step2 > 1e-13) {
          AmplifiedElement xn = x + scaled(dir2, step2);
          double nn = amplified_norm(xn, p);
          if (nn > 0.0) {
            xn = scaled(xn, 1.0 / nn);
            double fn = amplified_norm(lmap.apply(xn), p);
            if (fn > fy * (1.0 + 1e-13)) {
              x = std::move(xn);
              fy = fn;
              improved2 = true;
              break;
            }
          }
          step2 *= 0.5;
        }
        if (improved2) continue;
      }
      break;
    }
  }
  out.stalled = out.iterations < max_iter;
  out.ratio = fy;
  out.witness = x;
  return out;
}

// Analytic upper bounds for recognized maps; nullopt otherwise.
std::optional<double> recognized_upper(const LinearMap& t, Exponent p, bool s1_flavor) {
  double dim_scale = std::sqrt(static_cast<double>(std::max(t.source.dim(), t.target.dim())));
  if (t.source == t.target) {
    Matrix id = Matrix::Identity(t.source.dim(), t.source.dim());
    if ((t.matrix - id).norm() <= 1e-12 * dim_scale) return 1.0;
    Matrix tr = LinearMap::transpose_map(t.source, t.p).matrix;
    if ((t.matrix - tr).norm() <= 1e-12 * dim_scale) {
      double nmax = t.source.max_block_size();
      return s1_flavor ? nmax : std::pow(nmax, 2.0 * std::abs(1.0 / p.value() - 0.5));
    }
  }
  // Maps with a direct factorization act as a scaled isometry on each source
  // site, so the operator norm is exact and equals the amplified norms.
  try {
    YeadonTriple triple = extract_yeadon(t);
    JordanSplit split = jordan_split(triple.jordan);
    if (l2_norm(split.f) > tol::alg * dim_scale) return std::nullopt;
    double best = 0.0;
    for (int s = 0; s < t.source.site_count(); ++s) {
      Element e = Element::matrix_unit(t.source, s, 0, 0);
      best = std::max(best, lp_norm(t.apply(e), p) / lp_norm(e, p));
    }
    return best * (1.0 + 1e-9);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<AmplifiedElement> witness_starts(const AlgebraSpec& source, int m) {
  std::vector<AmplifiedElement> starts;
  for (int s = 0; s < source.site_count(); ++s) {
    if (source.site(s).n < 2 || m < 2) continue;
    starts.push_back(matrix_unit_family(source, s, m, false));
    starts.push_back(matrix_unit_family(source, s, m, true));
  }
  return starts;
}

void reconcile_bounds(NormEstimate& est) {
  if (!est.upper) return;
  if (est.lower > *est.upper) {
    if (est.lower <= *est.upper * (1.0 + 1e-9))
      est.lower = *est.upper;
    else
      throw Error("norm estimate: measured lower bound exceeds the analytic value");
  }
}

}  // namespace

NormEstimate cb_norm_estimate(const LinearMap& t, Exponent p, const EstimateOptions& opt) {
  int m_max = opt.m_max > 0 ? opt.m_max : 2 * std::max(1, t.source.max_block_size());
  Rng master(opt.seed);
  NormEstimate est;
  std::optional<AmplifiedElement> carried;
  bool hit_cap = false;

  for (int m = 1; m <= m_max; ++m) {
    AmplifiedMap lmap = amplify_map(t, m, AmplifyKind::Sp);
    LinearMap adj = t.weighted_adjoint();
    std::vector<AmplifiedElement> starts;
    if (carried) starts.push_back(pad_amplified(*carried, m));
    for (auto& w : witness_starts(t.source, m)) starts.push_back(std::move(w));
    Rng level = master.fork(static_cast<uint64_t>(m));
    for (int r = 0; r < opt.restarts; ++r) {
      Rng rr = level.fork(static_cast<uint64_t>(r));
      starts.push_back(random_amplified(t.source, m, rr));
    }

    std::vector<AscentOut> results(starts.size());
    parallel_for(static_cast<int>(starts.size()), [&](int i) {
      results[static_cast<size_t>(i)] =
          ascend_ratio(lmap, adj, starts[static_cast<size_t>(i)], p, opt.max_iter);
    });

    int best = 0;
    for (size_t i = 0; i < results.size(); ++i) {
      est.iterations += results[i].iterations;
      if (results[i].ratio > results[static_cast<size_t>(best)].ratio) best = static_cast<int>(i);
    }
    if (!results[static_cast<size_t>(best)].stalled) hit_cap = true;
    if (results[static_cast<size_t>(best)].ratio > est.lower) {
      est.lower = results[static_cast<size_t>(best)].ratio;
      est.witness = results[static_cast<size_t>(best)].witness;
    }
    carried = est.witness;
    est.per_m.push_back(est.lower);
  }

  est.converged = !hit_cap;
  est.upper = recognized_upper(t, p, false);
  reconcile_bounds(est);
  return est;
}

NormEstimate s1_bounded_norm_estimate(const LinearMap& t, Exponent p,
                                      const EstimateOptions& opt) {
  int m_max = opt.m_max > 0 ? opt.m_max : 2 * std::max(1, t.source.max_block_size());
  Rng master(opt.seed);
  NormEstimate est;
  std::optional<AmplifiedElement> carried;
  bool all_converged = true;
  bool exact_p1 = std::abs(p.value() - 1.0) < 1e-12;

  for (int m = 1; m <= m_max; ++m) {
    AmplifiedMap lmap = amplify_map(t, m, AmplifyKind::S1);
    std::vector<AmplifiedElement> candidates;
    if (carried) candidates.push_back(pad_amplified(*carried, m));
    for (auto& w : witness_starts(t.source, m)) candidates.push_back(std::move(w));
    Rng level = master.fork(static_cast<uint64_t>(m) * 2654435761ULL);
    for (int r = 0; r < opt.samples; ++r) {
      Rng rr = level.fork(static_cast<uint64_t>(r));
      candidates.push_back(random_amplified(t.source, m, rr));
    }

    struct Cand {
      double ratio = 0.0;
      bool converged = true;
    };
    std::vector<Cand> results(candidates.size());
    parallel_for(static_cast<int>(candidates.size()), [&](int i) {
      const AmplifiedElement& x = candidates[static_cast<size_t>(i)];
      S1Options inner;
      inner.restarts = opt.restarts;
      inner.max_iter = opt.max_iter;
      inner.seed = opt.seed ^ (static_cast<uint64_t>(m) << 32) ^ static_cast<uint64_t>(i);
      double den;
      bool den_ok = true;
      if (exact_p1) {
        den = amplified_norm(x, p);
      } else {
        S1Upper d = s1_norm_upper(x, p, inner);
        den = d.value;
        den_ok = d.converged;
      }
      if (den <= 1e-12) {
        results[static_cast<size_t>(i)] = Cand{0.0, true};
        return;
      }
      S1Upper num = s1_norm_upper(lmap.apply(x), p, inner);
      results[static_cast<size_t>(i)] = Cand{num.value / den, num.converged && den_ok};
    });

    for (size_t i = 0; i < results.size(); ++i) {
      all_converged = all_converged && results[i].converged;
      if (results[i].ratio > est.lower) {
        est.lower = results[i].ratio;
        est.witness = candidates[i];
      }
      ++est.iterations;
    }
    carried = est.witness;
    est.per_m.push_back(est.lower);
  }

  est.converged = all_converged;
  est.upper = recognized_upper(t, p, true);
  reconcile_bounds(est);
  return est;
}

SpecialIdentityReport check_special_identities(int n, int m, Exponent p, int samples,
                                               uint64_t seed) {
  AlgebraSpec spec = make_algebra({{n, {1.0}}});
  Rng rng(seed);
  SpecialIdentityReport report;
  report.samples = samples;
  for (int k = 0; k < samples; ++k) {
    AmplifiedElement x = random_amplified(spec, m, rng);
    AmplifiedElement inner = transpose_inner(x);
    AmplifiedElement outer = transpose_outer(x);

    double na = amplified_norm(inner, p);
    double nb = amplified_norm(outer, p);
    double sp_dev = std::abs(na - nb) / std::max({na, nb, 1e-300});
    report.max_sp_dev = std::max(report.max_sp_dev, sp_dev);
    if (sp_dev <= tol::norm_rel) ++report.sp_pass;

    S1Options o;
    o.seed = rng.next_u64();
    o.restarts = 6;
    S1Upper ua = s1_norm_upper(inner, p, o);
    S1Upper ub = s1_norm_upper(outer, p, o);
    // The transposition carries factorizations across sides at equal
    // objective; feed each side the other's best before comparing.
    double va = ua.value;
    double vb = ub.value;
    try {
      va = std::min(va, factorization_value(inner, transpose_transform(ub.factorization), p));
      vb = std::min(vb, factorization_value(outer, transpose_transform(ua.factorization), p));
    } catch (const Error&) {
      // keep the raw upper estimates
    }
    double s1_dev = std::abs(va - vb) / std::max({va, vb, 1e-300});
    report.max_s1_dev = std::max(report.max_s1_dev, s1_dev);
    if (s1_dev <= 1e-3) ++report.s1_pass;
  }
  report.all_pass = report.sp_pass == samples && report.s1_pass == samples;
  return report;
}

}  // namespace nclp
