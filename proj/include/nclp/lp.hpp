#pragma once

#include <vector>

#include "nclp/algebra.hpp"

namespace nclp {

/// An L^p exponent, 1 <= p < infinity.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    if (!(p >= 1.0)) throw Error("exponent: p must satisfy p >= 1");
  }
  double value() const { return p_; }
  /// Conjugate exponent p/(p-1); only defined for p > 1.
  double conjugate() const {
    if (p_ <= 1.0) throw Error("exponent: conjugate undefined at p = 1");
    return p_ / (p_ - 1.0);
  }

 private:
  double p_;
};

/// Singular values of a matrix, descending.
std::vector<double> singular_values(const Matrix& m);

/// Moore-Penrose pseudo-inverse with a relative rank cutoff.
Matrix pseudo_inverse(const Matrix& m, double rel_cut = 1e-12);

/// ||x||_p = tau(|x|^p)^(1/p), computed per site from the eigenvalues of
/// x* x: (sum_site mu * sum_i sigma_i^p)^(1/p).
double lp_norm(const Element& x, Exponent p);

struct PolarDecomposition {
  Element w;  ///< partial isometry with w* w = support of b
  Element b;  ///< |x|, positive semidefinite
};

/// Polar decomposition x = w b with b = |x| and w vanishing on ker b.
PolarDecomposition polar(const Element& x);

/// Projection onto the range of a positive element (eigenvalues above the
/// relative cutoff).
Element support_projection(const Element& positive, double rel_cut = tol::support_cut);

/// Spectral projection chi_[lo, hi](x) of a self-adjoint element. Closed
/// interval endpoints; eigenvalues are clustered with a relative gap
/// tolerance so near-degenerate groups stay together.
Element spectral_projection(const Element& x, double lo, double hi);

/// Eigenvalue clusters of a self-adjoint element, across all sites, with the
/// relative gap tolerance tol::gap. Returns (mean eigenvalue, projection)
/// pairs in increasing order; the projections sum to the identity.
std::vector<std::pair<double, Element>> eigen_clusters(const Element& x);

/// Gradient of y -> ||y||_p with respect to the weighted pairing
/// \<g, dy\> = sum_site mu Re tr(g* dy). Zero at y = 0. At p = 1 this is a
/// subgradient supported on the nonzero singular values.
Element lp_norm_gradient(const Element& y, Exponent p);

/// Finite-difference gradient of the same functional; fallback used near
/// singular-value degeneracies where the analytic formula is unreliable.
Element lp_norm_gradient_fd(const Element& y, Exponent p, double step = 1e-7);

/// An m x m matrix [x_ij] of elements over a common base algebra; the
/// coordinate realization of L^p(M (x) M_m) = L^p(M) (x) S^p_m.
struct AmplifiedElement {
  AlgebraSpec base;
  int m = 0;
  std::vector<Element> entries;  ///< row-major, entries[i*m + j] = x_ij

  static AmplifiedElement zero(const AlgebraSpec& base, int m);
  const Element& entry(int i, int j) const { return entries.at(static_cast<size_t>(i * m + j)); }
  Element& entry(int i, int j) { return entries.at(static_cast<size_t>(i * m + j)); }
};

/// The tensor algebra spec (x) M_m: block sizes n_j * m, same weights.
AlgebraSpec amplified_spec(const AlgebraSpec& base, int m);

/// The element of amplified_spec(base, m) whose (i, j) outer block at each
/// site is x_ij at that site.
Element assemble(const AmplifiedElement& x);

/// Inverse of assemble.
AmplifiedElement disassemble(const AlgebraSpec& base, int m, const Element& big);

/// L^p norm of the assembled matrix over the tensor algebra.
double amplified_norm(const AmplifiedElement& x, Exponent p);

/// Outer transposition [x_ij] -> [x_ji].
AmplifiedElement transpose_outer(const AmplifiedElement& x);

/// Entrywise blockwise transposition [x_ij] -> [op_iso(x_ij)].
AmplifiedElement transpose_inner(const AmplifiedElement& x);

AmplifiedElement operator+(const AmplifiedElement& x, const AmplifiedElement& y);
AmplifiedElement operator*(Complex c, AmplifiedElement x);

/// Verifies that the L^p norm of [x_ij] over the opposite algebra (realized
/// by blockwise transposition) equals the norm of [x_ji] over the original,
/// within tol::norm_rel relative.
bool check_optr_cb(const AmplifiedElement& x, Exponent p);

}  // namespace nclp
