#include "nclp/linear_map.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace nclp {

Element LinearMap::apply(const Element& x) const {
  if (x.spec() != source) throw Error("linear map: element is not in the source algebra");
  return devectorize(target, matrix * vectorize(x));
}

LinearMap LinearMap::identity(const AlgebraSpec& spec, double p) {
  Exponent check(p);
  return LinearMap{spec, spec, p, Matrix::Identity(spec.dim(), spec.dim())};
}

LinearMap LinearMap::zero(const AlgebraSpec& source, const AlgebraSpec& target, double p) {
  Exponent check(p);
  return LinearMap{source, target, p, Matrix::Zero(target.dim(), source.dim())};
}

LinearMap LinearMap::transpose_map(const AlgebraSpec& spec, double p) {
  return map_from_action(spec, spec, p, [](const Element& x) { return op_iso(x); });
}

LinearMap LinearMap::compose(const LinearMap& other) const {
  if (other.target != source) throw Error("compose: inner algebras do not match");
  return LinearMap{other.source, target, p, matrix * other.matrix};
}

LinearMap LinearMap::weighted_adjoint() const {
  std::vector<double> ws = coordinate_weights(source);
  std::vector<double> wt = coordinate_weights(target);
  Matrix adj = matrix.adjoint();
  for (Eigen::Index r = 0; r < adj.rows(); ++r)
    for (Eigen::Index c = 0; c < adj.cols(); ++c)
      adj(r, c) *= wt[static_cast<size_t>(c)] / ws[static_cast<size_t>(r)];
  return LinearMap{target, source, p, std::move(adj)};
}

LinearMap LinearMap::inverse() const {
  if (matrix.rows() != matrix.cols()) throw Error("inverse: map is not square");
  Eigen::FullPivLU<Matrix> lu(matrix);
  if (!lu.isInvertible()) throw Error("inverse: coordinate matrix is singular");
  return LinearMap{target, source, p, lu.inverse()};
}

double LinearMap::coordinate_norm() const {
  Eigen::JacobiSVD<Matrix> svd(matrix);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

bool LinearMap::is_bijective(double rel_cut) const {
  if (matrix.rows() != matrix.cols()) return false;
  Eigen::JacobiSVD<Matrix> svd(matrix);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return false;
  return sv(sv.size() - 1) > rel_cut * sv(0);
}

LinearMap map_from_action(const AlgebraSpec& source, const AlgebraSpec& target, double p,
                          const std::function<Element(const Element&)>& action) {
  Exponent check(p);
  Matrix m(target.dim(), source.dim());
  Vector basis = Vector::Zero(source.dim());
  for (int k = 0; k < source.dim(); ++k) {
    basis(k) = Complex(1.0, 0.0);
    m.col(k) = vectorize(action(devectorize(source, basis)));
    basis(k) = Complex(0.0, 0.0);
  }
  return LinearMap{source, target, p, std::move(m)};
}

LinearMap direct_sum_map(const LinearMap& a, const LinearMap& b) {
  if (a.p != b.p) throw Error("direct_sum_map: exponent mismatch");
  AlgebraSpec src = direct_sum(a.source, b.source);
  AlgebraSpec tgt = direct_sum(a.target, b.target);
  Matrix m = Matrix::Zero(tgt.dim(), src.dim());
  m.topLeftCorner(a.target.dim(), a.source.dim()) = a.matrix;
  m.bottomRightCorner(b.target.dim(), b.source.dim()) = b.matrix;
  return LinearMap{std::move(src), std::move(tgt), a.p, std::move(m)};
}

LinearMap embed_matrix_block(const AlgebraSpec& spec, int N, double p) {
  if (N < 1) throw Error("embed_matrix_block: N must be >= 1");
  if (subhomogeneous_degree(spec) < N + 1)
    throw Error("embed_matrix_block: no block of size >= N+1");
  int site = -1;
  for (int s = 0; s < spec.site_count(); ++s) {
    if (spec.site(s).n >= N + 1) {
      site = s;
      break;
    }
  }
  AlgebraSpec small = make_algebra({{N + 1, {1.0}}});
  double scale = std::pow(spec.site(site).weight, -1.0 / p);
  return map_from_action(small, spec, p, [&](const Element& a) {
    Element out = Element::zero(spec);
    out.at(site).topLeftCorner(N + 1, N + 1) = scale * a.at(0);
    return out;
  });
}

}  // namespace nclp
