#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nclp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Library-wide tolerances. Comparisons scale with the norms of their
/// inputs unless stated otherwise.
namespace tol {
inline constexpr double alg = 1e-9;          ///< algebraic identities at unit scale
inline constexpr double norm_rel = 1e-8;     ///< relative norm comparisons
inline constexpr double fact = 1e-8;         ///< factorization reconstruction
inline constexpr double support_cut = 1e-10; ///< relative spectral support cutoff
inline constexpr double gap = 1e-10;         ///< relative eigenvalue clustering gap
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One direct summand L^infty(Omega; M_n) with finite Omega: a matrix size n
/// and one strictly positive trace weight per point of Omega.
struct Block {
  int n = 0;
  std::vector<double> weights;
};

/// A (block, point) pair. Each site carries a full matrix algebra M_n with
/// trace weight mu; sites are the minimal central summands of the algebra.
struct Site {
  int block = 0;
  int point = 0;
  int n = 0;
  double weight = 1.0;
  int offset = 0;  ///< first coordinate of this site in the vectorized layout
};

/// A finite-dimensional semifinite von Neumann algebra, realized as a direct
/// sum of weighted matrix blocks. Immutable after construction.
///
/// Coordinate convention: elements vectorize block-major, point-major,
/// row-major within each site; the total dimension is sum over sites of n^2.
class AlgebraSpec {
 public:
  AlgebraSpec() = default;
  explicit AlgebraSpec(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(int s) const { return sites_.at(static_cast<size_t>(s)); }
  int site_count() const { return static_cast<int>(sites_.size()); }
  int dim() const { return dim_; }
  int max_block_size() const { return max_n_; }

  bool operator==(const AlgebraSpec& other) const;
  bool operator!=(const AlgebraSpec& other) const { return !(*this == other); }

 private:
  std::vector<Block> blocks_;
  std::vector<Site> sites_;
  int dim_ = 0;
  int max_n_ = 0;
};

/// Validates sizes and weights and returns the spec. Blocks keep the given
/// order. Rejects an empty block list, nonpositive sizes and nonpositive
/// weights.
AlgebraSpec make_algebra(const std::vector<std::pair<int, std::vector<double>>>& blocks);

/// Direct sum: blocks of a followed by blocks of b.
AlgebraSpec direct_sum(const AlgebraSpec& a, const AlgebraSpec& b);

/// The subalgebra spanned by a subset of sites, one block per selected site
/// (selection order preserved).
AlgebraSpec sub_spec(const AlgebraSpec& spec, const std::vector<int>& sites);

/// An element of an algebra: one complex n x n matrix per site.
class Element {
 public:
  Element() = default;
  Element(AlgebraSpec spec, std::vector<Matrix> data);

  static Element zero(const AlgebraSpec& spec);
  static Element identity(const AlgebraSpec& spec);
  /// Matrix unit e_{r,c} at the given site, zero elsewhere.
  static Element matrix_unit(const AlgebraSpec& spec, int site, int r, int c);

  const AlgebraSpec& spec() const { return spec_; }
  int site_count() const { return static_cast<int>(data_.size()); }
  const Matrix& at(int site) const { return data_.at(static_cast<size_t>(site)); }
  Matrix& at(int site) { return data_.at(static_cast<size_t>(site)); }

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(Complex c);

 private:
  AlgebraSpec spec_;
  std::vector<Matrix> data_;
};

Element operator+(Element lhs, const Element& rhs);
Element operator-(Element lhs, const Element& rhs);
Element operator-(const Element& x);
Element operator*(Complex c, Element x);
Element operator*(Element x, Complex c);
/// Product in the algebra (blockwise matrix product).
Element operator*(const Element& x, const Element& y);

Element multiply(const Element& x, const Element& y);
Element adjoint(const Element& x);
Element add(const Element& x, const Element& y);
Element scale(Complex c, const Element& x);

/// Weighted trace tau(x) = sum over sites of mu * MatrixTrace(x_site).
/// Linear and tracial: tau(xy) = tau(yx).
Complex trace(const Element& x);

/// Weighted L^2 (Frobenius) norm: sqrt(sum mu * ||x_site||_F^2). Used for
/// tolerance scaling; equals the p = 2 norm.
double l2_norm(const Element& x);

/// Weighted L^2 distance ||x - y||_2.
double l2_dist(const Element& x, const Element& y);

/// Largest absolute entry across all sites.
double max_abs(const Element& x);

/// Coordinate vector in the documented order (block-major, point-major,
/// row-major within each site).
Vector vectorize(const Element& x);
Element devectorize(const AlgebraSpec& spec, const Vector& v);

/// Per-coordinate trace weights: weight(site) repeated n^2 times.
std::vector<double> coordinate_weights(const AlgebraSpec& spec);

/// Identity supported on a single site.
Element site_indicator(const AlgebraSpec& spec, int site);

/// Sum of site indicators; a central projection.
Element central_projection_from_sites(const AlgebraSpec& spec, const std::vector<int>& sites);

/// One minimal central projection per site, mutually orthogonal, summing
/// to the identity.
std::vector<Element> minimal_central_projections(const AlgebraSpec& spec);

/// Largest matrix block size: the degree of subhomogeneity.
int subhomogeneous_degree(const AlgebraSpec& spec);

/// The opposite algebra, realized concretely on the same blocks: reversing
/// the product is implemented by blockwise transposition, so the spec data
/// is unchanged.
AlgebraSpec opposite(const AlgebraSpec& spec);

/// Blockwise transpose: the canonical isomorphism onto the opposite algebra.
/// Satisfies op_iso(xy) = op_iso(y) op_iso(x) and preserves the trace.
Element op_iso(const Element& x);

namespace detail {
void require_same_spec(const Element& x, const Element& y, const char* where);
}  // namespace detail

}  // namespace nclp
