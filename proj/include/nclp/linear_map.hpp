#pragma once

#include <functional>

#include "nclp/algebra.hpp"
#include "nclp/lp.hpp"

namespace nclp {

/// A linear operator between two L^p spaces, stored as a complex matrix
/// acting on coordinate vectors (block-major, point-major, row-major).
struct LinearMap {
  AlgebraSpec source;
  AlgebraSpec target;
  double p = 2.0;
  Matrix matrix;  ///< dim(target) x dim(source)

  Element apply(const Element& x) const;

  static LinearMap identity(const AlgebraSpec& spec, double p);
  static LinearMap zero(const AlgebraSpec& source, const AlgebraSpec& target, double p);
  /// Blockwise transposition as a map from the algebra to itself.
  static LinearMap transpose_map(const AlgebraSpec& spec, double p);

  /// this o other.
  LinearMap compose(const LinearMap& other) const;
  /// Adjoint with respect to the weighted trace pairings on both sides.
  LinearMap weighted_adjoint() const;
  /// Matrix inverse; throws on singular or non-square maps.
  LinearMap inverse() const;

  /// Spectral norm of the coordinate matrix; a convenient scale for
  /// tolerance thresholds (not the L^p operator norm).
  double coordinate_norm() const;
  bool is_bijective(double rel_cut = 1e-10) const;
};

/// Builds the coordinate matrix from an action on basis elements.
LinearMap map_from_action(const AlgebraSpec& source, const AlgebraSpec& target, double p,
                          const std::function<Element(const Element&)>& action);

/// Block-diagonal sum acting on direct_sum(a.source, b.source).
LinearMap direct_sum_map(const LinearMap& a, const LinearMap& b);

/// The normalized corner embedding of the (N+1) x (N+1) matrix algebra into
/// L^p(spec): a |-> a (+) 0 at the first site with n >= N+1, scaled so the
/// map is an isometry for the given exponent. Fails when every block has
/// size <= N.
LinearMap embed_matrix_block(const AlgebraSpec& spec, int N, double p);

}  // namespace nclp
