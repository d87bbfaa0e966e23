#include "nclp/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace nclp {

AlgebraSpec::AlgebraSpec(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error("algebra: block list is empty");
  int offset = 0;
  for (int j = 0; j < static_cast<int>(blocks_.size()); ++j) {
    const Block& b = blocks_[static_cast<size_t>(j)];
    if (b.n < 1) throw Error("algebra: block size must be >= 1");
    if (b.weights.empty()) throw Error("algebra: block has no trace weights");
    for (double w : b.weights) {
      if (!(w > 0.0)) throw Error("algebra: trace weights must be > 0");
    }
    for (int point = 0; point < static_cast<int>(b.weights.size()); ++point) {
      Site s;
      s.block = j;
      s.point = point;
      s.n = b.n;
      s.weight = b.weights[static_cast<size_t>(point)];
      s.offset = offset;
      offset += b.n * b.n;
      sites_.push_back(s);
    }
    max_n_ = std::max(max_n_, b.n);
  }
  dim_ = offset;
}

bool AlgebraSpec::operator==(const AlgebraSpec& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (size_t j = 0; j < blocks_.size(); ++j) {
    if (blocks_[j].n != other.blocks_[j].n) return false;
    if (blocks_[j].weights != other.blocks_[j].weights) return false;
  }
  return true;
}

AlgebraSpec make_algebra(const std::vector<std::pair<int, std::vector<double>>>& blocks) {
  std::vector<Block> bs;
  bs.reserve(blocks.size());
  for (const auto& [n, weights] : blocks) bs.push_back(Block{n, weights});
  return AlgebraSpec(std::move(bs));
}

AlgebraSpec direct_sum(const AlgebraSpec& a, const AlgebraSpec& b) {
  std::vector<Block> bs = a.blocks();
  bs.insert(bs.end(), b.blocks().begin(), b.blocks().end());
  return AlgebraSpec(std::move(bs));
}

AlgebraSpec sub_spec(const AlgebraSpec& spec, const std::vector<int>& sites) {
  if (sites.empty()) throw Error("sub_spec: empty site selection");
  std::vector<Block> bs;
  for (int s : sites) {
    const Site& site = spec.site(s);
    bs.push_back(Block{site.n, {site.weight}});
  }
  return AlgebraSpec(std::move(bs));
}

Element::Element(AlgebraSpec spec, std::vector<Matrix> data)
    : spec_(std::move(spec)), data_(std::move(data)) {
  if (static_cast<int>(data_.size()) != spec_.site_count())
    throw Error("element: wrong number of site matrices");
  for (int s = 0; s < spec_.site_count(); ++s) {
    int n = spec_.site(s).n;
    if (data_[static_cast<size_t>(s)].rows() != n || data_[static_cast<size_t>(s)].cols() != n)
      throw Error("element: site matrix shape mismatch");
  }
}

Element Element::zero(const AlgebraSpec& spec) {
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(spec.site_count()));
  for (const Site& s : spec.sites()) data.push_back(Matrix::Zero(s.n, s.n));
  return Element(spec, std::move(data));
}

Element Element::identity(const AlgebraSpec& spec) {
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(spec.site_count()));
  for (const Site& s : spec.sites()) data.push_back(Matrix::Identity(s.n, s.n));
  return Element(spec, std::move(data));
}

Element Element::matrix_unit(const AlgebraSpec& spec, int site, int r, int c) {
  Element e = zero(spec);
  const Site& s = spec.site(site);
  if (r < 0 || r >= s.n || c < 0 || c >= s.n) throw Error("matrix_unit: index out of range");
  e.at(site)(r, c) = Complex(1.0, 0.0);
  return e;
}

namespace detail {
void require_same_spec(const Element& x, const Element& y, const char* where) {
  if (x.spec() != y.spec()) throw Error(std::string(where) + ": operand spec mismatch");
}
}  // namespace detail

Element& Element::operator+=(const Element& rhs) {
  detail::require_same_spec(*this, rhs, "add");
  for (int s = 0; s < site_count(); ++s) data_[static_cast<size_t>(s)] += rhs.at(s);
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  detail::require_same_spec(*this, rhs, "subtract");
  for (int s = 0; s < site_count(); ++s) data_[static_cast<size_t>(s)] -= rhs.at(s);
  return *this;
}

Element& Element::operator*=(Complex c) {
  for (auto& m : data_) m *= c;
  return *this;
}

Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }

Element operator-(const Element& x) { return Complex(-1.0, 0.0) * x; }

Element operator*(Complex c, Element x) { return x *= c; }
Element operator*(Element x, Complex c) { return x *= c; }

Element operator*(const Element& x, const Element& y) { return multiply(x, y); }

Element multiply(const Element& x, const Element& y) {
  detail::require_same_spec(x, y, "multiply");
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(x.site_count()));
  for (int s = 0; s < x.site_count(); ++s) data.push_back(x.at(s) * y.at(s));
  return Element(x.spec(), std::move(data));
}

Element adjoint(const Element& x) {
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(x.site_count()));
  for (int s = 0; s < x.site_count(); ++s) data.push_back(x.at(s).adjoint());
  return Element(x.spec(), std::move(data));
}

Element add(const Element& x, const Element& y) { return x + y; }
Element scale(Complex c, const Element& x) { return c * x; }

Complex trace(const Element& x) {
  Complex t(0.0, 0.0);
  for (int s = 0; s < x.site_count(); ++s) t += x.spec().site(s).weight * x.at(s).trace();
  return t;
}

double l2_norm(const Element& x) {
  double sum = 0.0;
  for (int s = 0; s < x.site_count(); ++s)
    sum += x.spec().site(s).weight * x.at(s).squaredNorm();
  return std::sqrt(sum);
}

double l2_dist(const Element& x, const Element& y) {
  detail::require_same_spec(x, y, "l2_dist");
  double sum = 0.0;
  for (int s = 0; s < x.site_count(); ++s)
    sum += x.spec().site(s).weight * (x.at(s) - y.at(s)).squaredNorm();
  return std::sqrt(sum);
}

double max_abs(const Element& x) {
  double m = 0.0;
  for (int s = 0; s < x.site_count(); ++s)
    m = std::max(m, x.at(s).cwiseAbs().maxCoeff());
  return m;
}

Vector vectorize(const Element& x) {
  Vector v(x.spec().dim());
  for (int s = 0; s < x.site_count(); ++s) {
    const Site& site = x.spec().site(s);
    const Matrix& m = x.at(s);
    for (int r = 0; r < site.n; ++r)
      for (int c = 0; c < site.n; ++c) v(site.offset + r * site.n + c) = m(r, c);
  }
  return v;
}

Element devectorize(const AlgebraSpec& spec, const Vector& v) {
  if (v.size() != spec.dim()) throw Error("devectorize: coordinate length mismatch");
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(spec.site_count()));
  for (const Site& site : spec.sites()) {
    Matrix m(site.n, site.n);
    for (int r = 0; r < site.n; ++r)
      for (int c = 0; c < site.n; ++c) m(r, c) = v(site.offset + r * site.n + c);
    data.push_back(std::move(m));
  }
  return Element(spec, std::move(data));
}

std::vector<double> coordinate_weights(const AlgebraSpec& spec) {
  std::vector<double> w(static_cast<size_t>(spec.dim()));
  for (const Site& site : spec.sites())
    for (int k = 0; k < site.n * site.n; ++k)
      w[static_cast<size_t>(site.offset + k)] = site.weight;
  return w;
}

Element site_indicator(const AlgebraSpec& spec, int site) {
  Element e = Element::zero(spec);
  e.at(site).setIdentity();
  return e;
}

Element central_projection_from_sites(const AlgebraSpec& spec, const std::vector<int>& sites) {
  Element e = Element::zero(spec);
  for (int s : sites) e.at(s).setIdentity();
  return e;
}

std::vector<Element> minimal_central_projections(const AlgebraSpec& spec) {
  std::vector<Element> ps;
  ps.reserve(static_cast<size_t>(spec.site_count()));
  for (int s = 0; s < spec.site_count(); ++s) ps.push_back(site_indicator(spec, s));
  return ps;
}

int subhomogeneous_degree(const AlgebraSpec& spec) { return spec.max_block_size(); }

AlgebraSpec opposite(const AlgebraSpec& spec) { return spec; }

Element op_iso(const Element& x) {
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(x.site_count()));
  for (int s = 0; s < x.site_count(); ++s) data.push_back(x.at(s).transpose());
  return Element(x.spec(), std::move(data));
}

}  // namespace nclp
