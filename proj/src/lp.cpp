#include "nclp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nclp {

std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + svd.singularValues().size());
  return s;
}

Matrix pseudo_inverse(const Matrix& m, double rel_cut) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() > 0 ? rel_cut * sv(0) : 0.0;
  Eigen::VectorXd inv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) inv(i) = sv(i) > cut ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Singular values straight from an SVD of each site matrix: the eigenvalues
// of x*x square the condition number, and their noise floor enters p < 2
// norms as its square root, which is visible at p = 1 on rank-deficient
// inputs.
double lp_norm(const Element& x, Exponent p) {
  double pp = p.value();
  double sum = 0.0;
  for (int s = 0; s < x.site_count(); ++s) {
    Eigen::JacobiSVD<Matrix> svd(x.at(s));
    double part = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      part += std::pow(svd.singularValues()(i), pp);
    sum += x.spec().site(s).weight * part;
  }
  return std::pow(sum, 1.0 / pp);
}

PolarDecomposition polar(const Element& x) {
  std::vector<Matrix> wdata, bdata;
  wdata.reserve(static_cast<size_t>(x.site_count()));
  bdata.reserve(static_cast<size_t>(x.site_count()));
  for (int s = 0; s < x.site_count(); ++s) {
    const Matrix& m = x.at(s);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = sv.size() > 0 ? tol::support_cut * sv(0) : 0.0;
    Eigen::VectorXd kept = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) kept(i) = sv(i) > cut ? 1.0 : 0.0;
    Matrix b = svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
    Matrix w = svd.matrixU() * kept.asDiagonal() * svd.matrixV().adjoint();
    wdata.push_back(std::move(w));
    bdata.push_back(std::move(b));
  }
  return PolarDecomposition{Element(x.spec(), std::move(wdata)),
                            Element(x.spec(), std::move(bdata))};
}

Element support_projection(const Element& positive, double rel_cut) {
  double scale = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  solvers.reserve(static_cast<size_t>(positive.site_count()));
  for (int s = 0; s < positive.site_count(); ++s) {
    solvers.emplace_back(positive.at(s));
    if (solvers.back().info() != Eigen::Success)
      throw Error("support_projection: eigendecomposition failed");
    for (Eigen::Index i = 0; i < solvers.back().eigenvalues().size(); ++i)
      scale = std::max(scale, std::abs(solvers.back().eigenvalues()(i)));
  }
  double cut = rel_cut * scale;
  std::vector<Matrix> data;
  for (int s = 0; s < positive.site_count(); ++s) {
    const auto& es = solvers[static_cast<size_t>(s)];
    int n = positive.spec().site(s).n;
    Matrix proj = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > cut)
        proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    data.push_back(std::move(proj));
  }
  return Element(positive.spec(), std::move(data));
}

std::vector<std::pair<double, Element>> eigen_clusters(const Element& x) {
  struct Eig {
    double value;
    int site;
    int index;
  };
  std::vector<Eig> eigs;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  solvers.reserve(static_cast<size_t>(x.site_count()));
  double vmax = 0.0;
  for (int s = 0; s < x.site_count(); ++s) {
    Matrix herm = 0.5 * (x.at(s) + x.at(s).adjoint());
    solvers.emplace_back(herm);
    for (Eigen::Index i = 0; i < solvers.back().eigenvalues().size(); ++i) {
      double ev = solvers.back().eigenvalues()(i);
      eigs.push_back(Eig{ev, s, static_cast<int>(i)});
      vmax = std::max(vmax, std::abs(ev));
    }
  }
  std::sort(eigs.begin(), eigs.end(), [](const Eig& a, const Eig& b) { return a.value < b.value; });

  double gap = tol::gap * std::max(vmax, 1.0);
  std::vector<std::pair<double, Element>> clusters;
  std::vector<std::vector<Eig>> groups;
  for (const Eig& e : eigs) {
    if (groups.empty() || e.value - groups.back().back().value > gap) groups.emplace_back();
    groups.back().push_back(e);
  }
  for (const auto& group : groups) {
    double mean = 0.0;
    Element proj = Element::zero(x.spec());
    for (const Eig& e : group) {
      mean += e.value;
      const auto& es = solvers[static_cast<size_t>(e.site)];
      proj.at(e.site) +=
          es.eigenvectors().col(e.index) * es.eigenvectors().col(e.index).adjoint();
    }
    clusters.emplace_back(mean / static_cast<double>(group.size()), std::move(proj));
  }
  return clusters;
}

Element spectral_projection(const Element& x, double lo, double hi) {
  // Self-adjointness gate, relative to the element scale.
  double scale = std::max(l2_norm(x), 1e-300);
  if (l2_dist(x, adjoint(x)) > 1e-8 * scale)
    throw Error("spectral_projection: element is not self-adjoint");

  double vmax = 1.0;
  for (int s = 0; s < x.site_count(); ++s)
    vmax = std::max(vmax, x.at(s).cwiseAbs().maxCoeff() * x.at(s).rows());
  double edge = tol::gap * vmax;  // closed endpoints with the clustering margin

  Element proj = Element::zero(x.spec());
  for (const auto& [mean, cluster] : eigen_clusters(x)) {
    if (mean < lo - edge || mean > hi + edge) continue;
    proj += cluster;
  }
  return proj;
}

Element lp_norm_gradient(const Element& y, Exponent p) {
  double f = lp_norm(y, p);
  if (f <= 0.0) return Element::zero(y.spec());
  double pp = p.value();
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(y.site_count()));
  for (int s = 0; s < y.site_count(); ++s) {
    Eigen::JacobiSVD<Matrix> svd(y.at(s), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = sv.size() > 0 ? tol::support_cut * std::max(sv(0), f) : 0.0;
    Eigen::VectorXd d(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (pp == 1.0) {
        d(i) = sv(i) > cut ? 1.0 : 0.0;
      } else {
        d(i) = std::pow(sv(i) / f, pp - 1.0);
      }
    }
    Matrix g = svd.matrixU() * d.asDiagonal() * svd.matrixV().adjoint();
    data.push_back(std::move(g));
  }
  return Element(y.spec(), std::move(data));
}

Element lp_norm_gradient_fd(const Element& y, Exponent p, double step) {
  Element g = Element::zero(y.spec());
  for (int s = 0; s < y.site_count(); ++s) {
    double mu = y.spec().site(s).weight;
    int n = y.spec().site(s).n;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        for (int part = 0; part < 2; ++part) {
          Complex delta = part == 0 ? Complex(step, 0.0) : Complex(0.0, step);
          Element yp = y;
          yp.at(s)(r, c) += delta;
          Element ym = y;
          ym.at(s)(r, c) -= delta;
          double df = (lp_norm(yp, p) - lp_norm(ym, p)) / (2.0 * step);
          if (part == 0)
            g.at(s)(r, c) += Complex(df / mu, 0.0);
          else
            g.at(s)(r, c) += Complex(0.0, df / mu);
        }
      }
    }
  }
  return g;
}

AmplifiedElement AmplifiedElement::zero(const AlgebraSpec& base, int m) {
  if (m < 1) throw Error("amplified: m must be >= 1");
  AmplifiedElement x;
  x.base = base;
  x.m = m;
  x.entries.assign(static_cast<size_t>(m * m), Element::zero(base));
  return x;
}

AlgebraSpec amplified_spec(const AlgebraSpec& base, int m) {
  if (m < 1) throw Error("amplified: m must be >= 1");
  std::vector<Block> bs;
  for (const Block& b : base.blocks()) bs.push_back(Block{b.n * m, b.weights});
  return AlgebraSpec(std::move(bs));
}

Element assemble(const AmplifiedElement& x) {
  AlgebraSpec big = amplified_spec(x.base, x.m);
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(big.site_count()));
  for (int s = 0; s < x.base.site_count(); ++s) {
    int n = x.base.site(s).n;
    Matrix blockmat = Matrix::Zero(n * x.m, n * x.m);
    for (int i = 0; i < x.m; ++i)
      for (int j = 0; j < x.m; ++j)
        blockmat.block(i * n, j * n, n, n) = x.entry(i, j).at(s);
    data.push_back(std::move(blockmat));
  }
  return Element(big, std::move(data));
}

AmplifiedElement disassemble(const AlgebraSpec& base, int m, const Element& big) {
  if (big.spec() != amplified_spec(base, m))
    throw Error("disassemble: element does not live on the amplified algebra");
  AmplifiedElement x = AmplifiedElement::zero(base, m);
  for (int s = 0; s < base.site_count(); ++s) {
    int n = base.site(s).n;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        x.entry(i, j).at(s) = big.at(s).block(i * n, j * n, n, n);
  }
  return x;
}

double amplified_norm(const AmplifiedElement& x, Exponent p) {
  return lp_norm(assemble(x), p);
}

AmplifiedElement transpose_outer(const AmplifiedElement& x) {
  AmplifiedElement y = x;
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) y.entry(i, j) = x.entry(j, i);
  return y;
}

AmplifiedElement transpose_inner(const AmplifiedElement& x) {
  AmplifiedElement y = x;
  for (auto& e : y.entries) e = op_iso(e);
  return y;
}

AmplifiedElement operator+(const AmplifiedElement& x, const AmplifiedElement& y) {
  if (x.base != y.base || x.m != y.m) throw Error("amplified add: shape mismatch");
  AmplifiedElement z = x;
  for (size_t k = 0; k < z.entries.size(); ++k) z.entries[k] += y.entries[k];
  return z;
}

AmplifiedElement operator*(Complex c, AmplifiedElement x) {
  for (auto& e : x.entries) e *= c;
  return x;
}

bool check_optr_cb(const AmplifiedElement& x, Exponent p) {
  double lhs = amplified_norm(transpose_inner(x), p);
  double rhs = amplified_norm(transpose_outer(x), p);
  double scale = std::max({lhs, rhs, 1e-300});
  return std::abs(lhs - rhs) <= tol::norm_rel * scale;
}

}  // namespace nclp
