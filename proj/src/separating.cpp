#include "nclp/separating.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nclp/random.hpp"

namespace nclp {

namespace {

// Defect threshold for assigning a central corner of the generated algebra
// to the homomorphic or anti-homomorphic side.
constexpr double kSplitTol = 1e-6;

Element positive_pseudo_inverse(const Element& b, double rel_cut) {
  double scale = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  solvers.reserve(static_cast<size_t>(b.site_count()));
  for (int s = 0; s < b.site_count(); ++s) {
    solvers.emplace_back(Matrix(0.5 * (b.at(s) + b.at(s).adjoint())));
    for (Eigen::Index i = 0; i < solvers.back().eigenvalues().size(); ++i)
      scale = std::max(scale, std::abs(solvers.back().eigenvalues()(i)));
  }
  double cut = rel_cut * scale;
  std::vector<Matrix> data;
  for (int s = 0; s < b.site_count(); ++s) {
    const auto& es = solvers[static_cast<size_t>(s)];
    Eigen::VectorXd inv(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      inv(i) = es.eigenvalues()(i) > cut ? 1.0 / es.eigenvalues()(i) : 0.0;
    data.push_back(es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint());
  }
  return Element(b.spec(), std::move(data));
}

std::vector<Element> source_basis(const AlgebraSpec& spec) {
  std::vector<Element> basis;
  basis.reserve(static_cast<size_t>(spec.dim()));
  Vector v = Vector::Zero(spec.dim());
  for (int k = 0; k < spec.dim(); ++k) {
    v(k) = Complex(1.0, 0.0);
    basis.push_back(devectorize(spec, v));
    v(k) = Complex(0.0, 0.0);
  }
  return basis;
}

// Complete check of the Jordan property on basis pairs (the identity is
// bilinear, so basis pairs span every case) plus *-preservation on the basis.
double jordan_defect(const LinearMap& jordan, const std::vector<Element>& basis,
                     const std::vector<Element>& images) {
  double jn = std::max(1.0, jordan.coordinate_norm());
  double worst = 0.0;
  for (size_t k = 0; k < basis.size(); ++k) {
    double star = l2_dist(jordan.apply(adjoint(basis[k])), adjoint(images[k]));
    worst = std::max(worst, star / jn);
  }
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t bidx = 0; bidx < basis.size(); ++bidx) {
      Element lhs = jordan.apply(basis[a] * basis[bidx] + basis[bidx] * basis[a]);
      Element rhs = images[a] * images[bidx] + images[bidx] * images[a];
      worst = std::max(worst, l2_dist(lhs, rhs) / (jn * jn));
    }
  }
  return worst;
}

}  // namespace

YeadonTriple extract_yeadon(const LinearMap& t) {
  Element h = t.apply(Element::identity(t.source));
  PolarDecomposition pd = polar(h);
  Element binv = positive_pseudo_inverse(pd.b, tol::support_cut);
  Element wadj = adjoint(pd.w);
  LinearMap jordan = map_from_action(t.source, t.target, t.p, [&](const Element& x) {
    return binv * (wadj * t.apply(x));
  });

  double tn = std::max(1.0, t.coordinate_norm());
  double dscale = std::max(1.0, l2_norm(Element::identity(t.target)));

  // (a) w* w = J(1) = s(B)
  Element sb = support_projection(pd.b);
  Element j1 = jordan.apply(Element::identity(t.source));
  if (l2_dist(wadj * pd.w, sb) > tol::alg * dscale)
    throw NotSeparating("a", "w* w differs from the support of B");
  if (l2_dist(j1, sb) > tol::alg * dscale * tn)
    throw NotSeparating("a", "J(1) differs from the support of B");

  std::vector<Element> basis = source_basis(t.source);
  std::vector<Element> images;
  images.reserve(basis.size());
  for (const Element& e : basis) images.push_back(jordan.apply(e));

  // (b) spectral projections of B commute with the range of J
  for (const auto& [value, proj] : eigen_clusters(pd.b)) {
    (void)value;
    for (size_t k = 0; k < basis.size(); ++k) {
      double comm = l2_dist(proj * images[k], images[k] * proj);
      if (comm > tol::alg * std::max(1.0, l2_norm(images[k])))
        throw NotSeparating("b", "a spectral projection of B does not commute with J");
    }
  }

  // (c) T(x) = w B J(x)
  for (size_t k = 0; k < basis.size(); ++k) {
    Element rebuilt = pd.w * (pd.b * images[k]);
    if (l2_dist(t.apply(basis[k]), rebuilt) > tol::alg * tn * std::max(1.0, l2_norm(basis[k])))
      throw NotSeparating("c", "T differs from w B J on a basis element");
  }

  if (jordan_defect(jordan, basis, images) > tol::alg * 10.0)
    throw NotSeparating("jordan", "extracted J is not a Jordan homomorphism");

  return YeadonTriple{pd.w, pd.b, std::move(jordan)};
}

SeparatingEvidence is_separating(const LinearMap& t, int trials, uint64_t seed) {
  Rng rng(seed);
  double tn = t.coordinate_norm();
  for (int trial = 0; trial < trials; ++trial) {
    auto [pp, qq] = random_orthogonal_projections(t.source, rng);
    auto [rr, ss] = random_orthogonal_projections(t.source, rng);
    Element x = pp * random_element(t.source, rng) * rr;
    Element y = qq * random_element(t.source, rng) * ss;
    double tol_sep = tol::norm_rel * std::max(tn * tn, 1e-30) * std::max(l2_norm(x), 1e-15) *
                     std::max(l2_norm(y), 1e-15);
    Element tx = t.apply(x);
    Element ty = t.apply(y);
    if (l2_norm(adjoint(tx) * ty) > tol_sep || l2_norm(tx * adjoint(ty)) > tol_sep) {
      SeparatingEvidence ev;
      ev.separating = false;
      ev.violated = "disjointness";
      ev.witness_x = x;
      ev.witness_y = y;
      return ev;
    }
  }
  try {
    extract_yeadon(t);
  } catch (const NotSeparating& e) {
    SeparatingEvidence ev;
    ev.separating = false;
    ev.violated = e.condition();
    return ev;
  }
  SeparatingEvidence ev;
  ev.separating = true;
  return ev;
}

namespace {

// Incremental orthonormal span of coordinate vectors. Candidates below the
// noise floor are treated as zero: products and hermitian parts of unit-scale
// inputs that vanish mathematically come in at rounding size, and the
// relative residual test alone would promote that noise to a basis direction.
class SpanBasis {
 public:
  explicit SpanBasis(double noise_floor = 1e-10) : floor_(noise_floor) {}
  bool add(Vector v) {
    double orig = v.norm();
    if (orig <= floor_) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : cols_) v -= q.dot(v) * q;
    if (v.norm() <= 1e-10 * orig) return false;
    v /= v.norm();
    cols_.push_back(std::move(v));
    return true;
  }
  const std::vector<Vector>& cols() const { return cols_; }

 private:
  double floor_;
  std::vector<Vector> cols_;
};

// Span-closure of the Jordan image under products: an element basis of the
// *-algebra D it generates. Word length is bounded by the dimension, so the
// loop stabilizes.
std::vector<Element> generated_algebra(const LinearMap& jordan) {
  const AlgebraSpec& tgt = jordan.target;
  SpanBasis span;
  std::vector<Element> basis;
  auto push = [&](const Element& e) {
    if (span.add(vectorize(e))) {
      basis.push_back(devectorize(tgt, span.cols().back()));
      return true;
    }
    return false;
  };
  push(jordan.apply(Element::identity(jordan.source)));
  for (const Element& e : source_basis(jordan.source)) {
    Element im = jordan.apply(e);
    push(im);
    push(adjoint(im));
  }
  int guard = tgt.dim() * tgt.dim();
  while (static_cast<int>(basis.size()) < tgt.dim() && guard-- > 0) {
    size_t old_size = basis.size();
    bool grew = false;
    for (size_t i = 0; i < old_size && static_cast<int>(basis.size()) < tgt.dim(); ++i) {
      for (size_t j = 0; j < old_size && static_cast<int>(basis.size()) < tgt.dim(); ++j) {
        grew |= push(basis[i] * basis[j]);
      }
    }
    if (!grew) break;
  }
  return basis;
}

// Minimal central projections of the algebra spanned by dbasis, whose unit
// is j1: the spectral clusters of a generic self-adjoint central element,
// shifted to be strictly positive on its support.
std::vector<Element> minimal_central_of(const std::vector<Element>& dbasis, const Element& j1) {
  const AlgebraSpec& spec = j1.spec();
  int r = static_cast<int>(dbasis.size());
  int dim = spec.dim();

  // Nullspace of c -> [sum_k c_k D_k, D_i] over all i.
  Matrix commutator(static_cast<Eigen::Index>(r) * dim, r);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < r; ++i) {
      Element comm = dbasis[static_cast<size_t>(k)] * dbasis[static_cast<size_t>(i)] -
                     dbasis[static_cast<size_t>(i)] * dbasis[static_cast<size_t>(k)];
      commutator.block(static_cast<Eigen::Index>(i) * dim, k, dim, 1) = vectorize(comm);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(commutator, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() > 0 ? 1e-8 * std::max(sv(0), 1.0) : 0.0;
  std::vector<Element> center;
  for (Eigen::Index c = 0; c < sv.size(); ++c) {
    if (sv(c) > cut) continue;
    Element z = Element::zero(spec);
    for (int k = 0; k < r; ++k) z += svd.matrixV()(k, c) * dbasis[static_cast<size_t>(k)];
    center.push_back(z);
  }

  SpanBasis hspan;
  std::vector<Element> hbasis;
  auto push_h = [&](const Element& e) {
    if (hspan.add(vectorize(e))) hbasis.push_back(devectorize(spec, hspan.cols().back()));
  };
  for (const Element& z : center) {
    push_h(Complex(0.5, 0.0) * (z + adjoint(z)));
    push_h(Complex(0.0, 0.5) * (z - adjoint(z)));
  }
  if (hbasis.empty()) return {support_projection(j1 * adjoint(j1))};

  Rng rng(0x6d63705fULL);  // fixed seed: the split must be reproducible
  Element generic = Element::zero(spec);
  for (const Element& hb : hbasis) generic += Complex(rng.uniform(1.0, 2.0), 0.0) * hb;
  generic = Complex(0.5, 0.0) * (generic + adjoint(generic));
  double shift = 3.0 * l2_norm(generic) + 1.0;
  generic += Complex(shift, 0.0) * j1;

  std::vector<Element> result;
  for (const auto& [mean, proj] : eigen_clusters(generic)) {
    if (mean > 0.5) result.push_back(proj);
  }
  return result;
}

}  // namespace

JordanSplit jordan_split(const LinearMap& jordan) {
  std::vector<Element> basis = source_basis(jordan.source);
  std::vector<Element> images;
  images.reserve(basis.size());
  for (const Element& e : basis) images.push_back(jordan.apply(e));
  if (jordan_defect(jordan, basis, images) > tol::alg * 10.0)
    throw Error("jordan_split: input is not a Jordan homomorphism");

  Element j1 = jordan.apply(Element::identity(jordan.source));
  if (l2_norm(j1) <= tol::alg) {
    Element z = Element::zero(jordan.target);
    LinearMap zero = LinearMap::zero(jordan.source, jordan.target, jordan.p);
    return JordanSplit{z, z, zero, zero};
  }

  std::vector<Element> dbasis = generated_algebra(jordan);
  std::vector<Element> centrals = minimal_central_of(dbasis, j1);

  size_t n = basis.size();
  std::vector<Element> product_images;
  product_images.reserve(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) product_images.push_back(jordan.apply(basis[a] * basis[b]));

  double jn = std::max(1.0, jordan.coordinate_norm());
  Element e = Element::zero(jordan.target);
  Element f = Element::zero(jordan.target);
  for (const Element& z : centrals) {
    double dm = 0.0, da = 0.0;
    for (size_t a = 0; a < n; ++a) {
      Element ja = images[a] * z;
      for (size_t b = 0; b < n; ++b) {
        Element jb = images[b] * z;
        const Element& jab = product_images[a * n + b];
        double scale = std::max(1.0, jn * jn * l2_norm(basis[a]) * l2_norm(basis[b]));
        dm = std::max(dm, l2_dist(jab * z, ja * jb) / scale);
        da = std::max(da, l2_dist(jab * z, jb * ja) / scale);
      }
    }
    if (dm <= kSplitTol)
      e += z;  // commutative corners land here by the tie rule
    else if (da <= kSplitTol)
      f += z;
    else
      throw Error(
          "jordan_split: a central corner is neither multiplicative nor anti-multiplicative");
  }

  LinearMap pi = map_from_action(jordan.source, jordan.target, jordan.p,
                                 [&](const Element& x) { return jordan.apply(x) * e; });
  LinearMap sigma = map_from_action(jordan.source, jordan.target, jordan.p,
                                    [&](const Element& x) { return jordan.apply(x) * f; });
  return JordanSplit{std::move(e), std::move(f), std::move(pi), std::move(sigma)};
}

namespace {

// Sites on which the map vanishes identically.
std::vector<int> vanishing_sites(const LinearMap& map, double rel_tol) {
  std::vector<int> out;
  double scale = std::max(1.0, map.coordinate_norm());
  for (int s = 0; s < map.source.site_count(); ++s) {
    const Site& site = map.source.site(s);
    double worst = 0.0;
    for (int k = 0; k < site.n * site.n; ++k)
      worst = std::max(worst, map.matrix.col(site.offset + k).norm());
    if (worst <= rel_tol * scale) out.push_back(s);
  }
  return out;
}

std::vector<int> coordinate_range(const AlgebraSpec& spec, const std::vector<int>& sites) {
  std::vector<int> idx;
  for (int s : sites) {
    const Site& site = spec.site(s);
    for (int k = 0; k < site.n * site.n; ++k) idx.push_back(site.offset + k);
  }
  return idx;
}

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(rows[r], cols[c]);
  return out;
}

}  // namespace

BijectiveSplit decompose_bijective(const LinearMap& t) {
  if (!t.is_bijective()) throw Error("decompose_bijective: map is not bijective");
  YeadonTriple triple = extract_yeadon(t);

  double dscale = std::max(1.0, l2_norm(Element::identity(t.target)));
  Element idt = Element::identity(t.target);
  if (l2_dist(adjoint(triple.w) * triple.w, idt) > tol::alg * dscale ||
      l2_dist(triple.w * adjoint(triple.w), idt) > tol::alg * dscale)
    throw Error("decompose_bijective: w is not unitary (map is not surjective)");

  JordanSplit split = jordan_split(triple.jordan);

  std::vector<int> alpha_sites = vanishing_sites(split.sigma, tol::alg);
  std::vector<int> beta_sites = vanishing_sites(split.pi, tol::alg);
  std::vector<char> in_alpha(static_cast<size_t>(t.source.site_count()), 0);
  std::vector<char> in_beta(static_cast<size_t>(t.source.site_count()), 0);
  for (int s : alpha_sites) in_alpha[static_cast<size_t>(s)] = 1;
  for (int s : beta_sites) in_beta[static_cast<size_t>(s)] = 1;
  for (int s = 0; s < t.source.site_count(); ++s) {
    if (in_alpha[static_cast<size_t>(s)] && in_beta[static_cast<size_t>(s)])
      throw Error("decompose_bijective: alpha beta != 0, J is not injective");
    if (!in_alpha[static_cast<size_t>(s)] && !in_beta[static_cast<size_t>(s)])
      throw Error("decompose_bijective: alpha + beta != 1, mixed corner found");
  }

  // For surjective maps e and f are central in the target, so whole target
  // sites belong to one side or the other.
  std::vector<int> n1_sites, n2_sites;
  for (int s = 0; s < t.target.site_count(); ++s) {
    int n = t.target.site(s).n;
    double de = (split.e.at(s) - Matrix::Identity(n, n)).norm();
    double df = (split.f.at(s) - Matrix::Identity(n, n)).norm();
    if (de <= tol::alg * dscale && split.f.at(s).norm() <= tol::alg * dscale)
      n1_sites.push_back(s);
    else if (df <= tol::alg * dscale && split.e.at(s).norm() <= tol::alg * dscale)
      n2_sites.push_back(s);
    else
      throw Error("decompose_bijective: e is not central in the target");
  }

  BijectiveSplit out;
  out.alpha = central_projection_from_sites(t.source, alpha_sites);
  out.beta = central_projection_from_sites(t.source, beta_sites);
  out.alpha_sites = alpha_sites;
  out.beta_sites = beta_sites;
  out.n1_sites = n1_sites;
  out.n2_sites = n2_sites;
  if (!alpha_sites.empty()) out.m1 = sub_spec(t.source, alpha_sites);
  if (!beta_sites.empty()) out.m2 = sub_spec(t.source, beta_sites);
  if (!n1_sites.empty()) out.n1 = sub_spec(t.target, n1_sites);
  if (!n2_sites.empty()) out.n2 = sub_spec(t.target, n2_sites);

  std::vector<int> src1 = coordinate_range(t.source, alpha_sites);
  std::vector<int> src2 = coordinate_range(t.source, beta_sites);
  std::vector<int> tgt1 = coordinate_range(t.target, n1_sites);
  std::vector<int> tgt2 = coordinate_range(t.target, n2_sites);

  double tn = std::max(1.0, t.coordinate_norm());
  if (submatrix(t.matrix, tgt2, src1).norm() > tol::alg * tn * dscale ||
      submatrix(t.matrix, tgt1, src2).norm() > tol::alg * tn * dscale)
    throw Error("decompose_bijective: T does not respect the decomposition");

  out.t1 = LinearMap{out.m1, out.n1, t.p, submatrix(t.matrix, tgt1, src1)};
  out.t2 = LinearMap{out.m2, out.n2, t.p, submatrix(t.matrix, tgt2, src2)};
  return out;
}

InverseAnalysis inverse_analysis(const LinearMap& t) {
  InverseAnalysis out{t.inverse(), false, false};
  out.inverse_separating = is_separating(out.inverse, 16, 0x696e76ULL).separating;
  if (!out.inverse_separating) return out;
  YeadonTriple triple = extract_yeadon(t);
  YeadonTriple inv_triple = extract_yeadon(out.inverse);
  Matrix ji = inv_triple.jordan.matrix * triple.jordan.matrix;
  Matrix ij = triple.jordan.matrix * inv_triple.jordan.matrix;
  double d1 = (ji - Matrix::Identity(t.source.dim(), t.source.dim())).norm();
  double d2 = (ij - Matrix::Identity(t.target.dim(), t.target.dim())).norm();
  double scale =
      std::max(1.0, triple.jordan.coordinate_norm() * inv_triple.jordan.coordinate_norm());
  out.jordan_inverse_matches =
      d1 <= tol::alg * scale * t.source.dim() && d2 <= tol::alg * scale * t.target.dim();
  return out;
}

KernelSummand kernel_summand(const LinearMap& t) {
  YeadonTriple triple = extract_yeadon(t);
  std::vector<int> m0 = vanishing_sites(triple.jordan, tol::alg);
  std::vector<int> rest;
  for (int s = 0; s < t.source.site_count(); ++s)
    if (std::find(m0.begin(), m0.end(), s) == m0.end()) rest.push_back(s);

  // ker T must be exactly the coordinate span of the vanishing sites.
  Eigen::JacobiSVD<Matrix> svd(t.matrix);
  const auto& sv = svd.singularValues();
  double cut = sv.size() > 0 ? 1e-10 * std::max(sv(0), 1.0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  int nullity = t.source.dim() - rank;
  int m0dim = 0;
  for (int s : m0) m0dim += t.source.site(s).n * t.source.site(s).n;
  if (nullity != m0dim)
    throw NotSeparating("kernel", "ker T is not the L^p space of a central summand");

  if (!rest.empty()) {
    std::vector<int> all_tgt(static_cast<size_t>(t.target.site_count()));
    for (int s = 0; s < t.target.site_count(); ++s) all_tgt[static_cast<size_t>(s)] = s;
    Matrix restr =
        submatrix(t.matrix, coordinate_range(t.target, all_tgt), coordinate_range(t.source, rest));
    Eigen::JacobiSVD<Matrix> rsvd(restr);
    const auto& rsv = rsvd.singularValues();
    int rrank = 0;
    for (Eigen::Index i = 0; i < rsv.size(); ++i)
      if (rsv(i) > 1e-10 * std::max(rsv(0), 1.0)) ++rrank;
    if (rrank != static_cast<int>(coordinate_range(t.source, rest).size()))
      throw NotSeparating("kernel", "T is not injective off the kernel summand");
  }

  KernelSummand out;
  out.m0_projection = central_projection_from_sites(t.source, m0);
  out.m0_sites = m0;
  out.complement_sites = rest;
  if (!rest.empty()) out.complement = sub_spec(t.source, rest);
  return out;
}

LinearMap build_yeadon_map(const Element& w, const Element& b, const LinearMap& jordan,
                           double p) {
  if (w.spec() != jordan.target || b.spec() != jordan.target)
    throw Error("build_yeadon_map: w and B must live in the Jordan target algebra");
  double dscale = std::max(1.0, l2_norm(Element::identity(jordan.target)));

  if (l2_dist(b, adjoint(b)) > tol::alg * std::max(1.0, l2_norm(b)))
    throw Error("build_yeadon_map: B is not self-adjoint");
  for (const auto& [value, proj] : eigen_clusters(b)) {
    (void)proj;
    if (value < -tol::alg * std::max(1.0, l2_norm(b)))
      throw Error("build_yeadon_map: B is not positive");
  }

  Element sb = support_projection(b);
  Element j1 = jordan.apply(Element::identity(jordan.source));
  if (l2_dist(adjoint(w) * w, sb) > tol::alg * dscale ||
      l2_dist(j1, sb) > tol::alg * dscale * std::max(1.0, jordan.coordinate_norm()))
    throw Error("build_yeadon_map: w* w = J(1) = s(B) fails");

  std::vector<Element> basis = source_basis(jordan.source);
  std::vector<Element> images;
  images.reserve(basis.size());
  for (const Element& e : basis) images.push_back(jordan.apply(e));
  if (jordan_defect(jordan, basis, images) > tol::alg * 10.0)
    throw Error("build_yeadon_map: J is not a Jordan homomorphism");
  for (const auto& [value, proj] : eigen_clusters(b)) {
    (void)value;
    for (const Element& im : images) {
      if (l2_dist(proj * im, im * proj) > tol::alg * std::max(1.0, l2_norm(im)))
        throw Error("build_yeadon_map: a spectral projection of B does not commute with J");
    }
  }

  return map_from_action(jordan.source, jordan.target, p,
                         [&](const Element& x) { return w * (b * jordan.apply(x)); });
}

CornerDefects corner_defects(const LinearMap& jordan, const std::vector<int>& source_sites) {
  double jn = std::max(1.0, jordan.coordinate_norm());
  CornerDefects out;
  for (int s : source_sites) {
    int n = jordan.source.site(s).n;
    std::vector<Element> probes;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        probes.push_back(Element::matrix_unit(jordan.source, s, r, c));
    for (const Element& a : probes) {
      Element ja = jordan.apply(a);
      for (const Element& b : probes) {
        Element jb = jordan.apply(b);
        Element jab = jordan.apply(a * b);
        double scale = std::max(1.0, jn * jn * l2_norm(a) * l2_norm(b));
        out.mult = std::max(out.mult, l2_dist(jab, ja * jb) / scale);
        out.anti = std::max(out.anti, l2_dist(jab, jb * ja) / scale);
      }
    }
  }
  return out;
}

double adjoint_intertwining_defect(const LinearMap& t, const YeadonTriple& triple, int probes,
                                   uint64_t seed) {
  Rng rng(seed);
  double tn = std::max(1.0, t.coordinate_norm());
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    Element z = random_element(t.source, rng);
    double zn = std::max(l2_norm(z), 1e-15);
    z *= Complex(1.0 / zn, 0.0);
    Element lhs = t.apply(adjoint(z));
    Element rhs = triple.w * adjoint(t.apply(z)) * triple.w;
    worst = std::max(worst, l2_dist(lhs, rhs) / tn);
  }
  return worst;
}

double module_identity_defect(const LinearMap& t, const LinearMap& jordan, bool anti, int probes,
                              uint64_t seed) {
  Rng rng(seed);
  double scale = std::max(1.0, t.coordinate_norm() * jordan.coordinate_norm());
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    Element z = random_element(t.source, rng);
    Element m = random_element(t.source, rng);
    double zn = std::max(l2_norm(z), 1e-15);
    double mn = std::max(l2_norm(m), 1e-15);
    z *= Complex(1.0 / zn, 0.0);
    m *= Complex(1.0 / mn, 0.0);
    Element lhs = anti ? t.apply(m * z) : t.apply(z * m);
    Element rhs = t.apply(z) * jordan.apply(m);
    worst = std::max(worst, l2_dist(lhs, rhs) / scale);
  }
  return worst;
}

}  // namespace nclp
