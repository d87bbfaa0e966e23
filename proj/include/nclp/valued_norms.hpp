#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nclp/linear_map.hpp"
#include "nclp/lp.hpp"

namespace nclp {

/// A finite factorization x_ij = sum_k a_ik b_kj with entries in L^{2p}(M).
struct Factorization {
  int m = 0;
  int inner = 0;           ///< inner index range K
  std::vector<Element> a;  ///< a[i*inner + k]
  std::vector<Element> b;  ///< b[k*m + j]
};

struct S1Options {
  int restarts = 8;
  int max_iter = 200;
  uint64_t seed = 0;
  int inner_size = 0;  ///< 0 = m * (max block size); clamped to >= m
  /// Extra initial factorizations (arbitrary inner size); the search never
  /// returns a value above the objective of a feasible warm start.
  std::vector<Factorization> warm_starts;
};

struct S1Upper {
  double value = 0.0;
  Factorization factorization;
  bool converged = false;
  int iterations = 0;
};

/// Upper bound on the S1-valued norm of [x_ij]: alternating minimization
/// over factorizations (least-squares half-steps, per-site rebalancing),
/// polar seed plus Gaussian restarts. Exact at p = 1 and at m = 1.
S1Upper s1_norm_upper(const AmplifiedElement& x, Exponent p, const S1Options& opt = {});

/// Sound lower bound: max over entries of ||x_ij||_p (sub-family
/// compression), and at p = 1 the exact trace norm of the assembled matrix.
double s1_norm_lower(const AmplifiedElement& x, Exponent p);

/// Weighted L^2 residual between x and the factorization's reconstruction.
double factorization_residual(const AmplifiedElement& x, const Factorization& f);

/// The objective ||sum aa*||_p^(1/2) ||sum b*b||_p^(1/2). Throws when the
/// factorization does not reproduce x within tol::fact relative.
double factorization_value(const AmplifiedElement& x, const Factorization& f, Exponent p);

/// Maps a factorization of [t(x_ij)] to one of [x_ji] with equal objective:
/// swap the roles of the two factor families and transpose blockwise.
Factorization transpose_transform(const Factorization& f);

/// Concatenation along the inner index; factorizes the entrywise sum.
Factorization concatenate(const Factorization& f, const Factorization& g);

enum class AmplifyKind { Sp, S1 };

/// T (x) id acting entrywise on m x m families; the kind tag records which
/// norms downstream estimators use.
struct AmplifiedMap {
  LinearMap map;
  int m = 1;
  AmplifyKind kind = AmplifyKind::Sp;

  AmplifiedElement apply(const AmplifiedElement& x) const;
};

AmplifiedMap amplify_map(const LinearMap& map, int m, AmplifyKind kind);

/// Bracketed operator-norm estimate. lower always comes with a witness that
/// reproduces it; upper is present only when an analytic value is known
/// (identity, blockwise transposition, maps with a direct factorization).
struct NormEstimate {
  double lower = 0.0;
  std::optional<double> upper;
  bool converged = false;
  int iterations = 0;
  std::optional<AmplifiedElement> witness;
  std::vector<double> per_m;  ///< running best through each amplification level
};

struct EstimateOptions {
  int m_max = 0;  ///< 0 = 2 * (max block size of the source)
  int restarts = 8;
  int samples = 16;  ///< random candidates per level in the S1 ratio search
  int max_iter = 300;
  uint64_t seed = 0;
};

/// Estimates ||T (x) id : L^p(M (x) M_m) -> L^p(N (x) M_m)|| over m <= m_max
/// by projected gradient ascent on the unit sphere, with matrix-unit witness
/// families and witnesses carried upward in m.
NormEstimate cb_norm_estimate(const LinearMap& t, Exponent p, const EstimateOptions& opt = {});

/// Estimates the S1-valued amplification norm by maximizing the ratio of
/// s1_norm_upper values over randomized inputs and witness families.
NormEstimate s1_bounded_norm_estimate(const LinearMap& t, Exponent p,
                                      const EstimateOptions& opt = {});

/// The family x_ij = e_ij (or e_ji when swapped) at one site, truncated to
/// min(m, n) indices: the sharp transposition witness.
AmplifiedElement matrix_unit_family(const AlgebraSpec& spec, int site, int m, bool swapped);

AmplifiedElement pad_amplified(const AmplifiedElement& x, int m_new);

struct SpecialIdentityReport {
  int samples = 0;
  int sp_pass = 0;
  int s1_pass = 0;
  double max_sp_dev = 0.0;
  double max_s1_dev = 0.0;
  bool all_pass = false;
};

/// On random m x m families over M_n: checks that the exact S^p norm is
/// invariant under inner-vs-outer transposition, and that the S1-valued
/// upper estimates of the two transposed sides agree within 1e-3 relative.
SpecialIdentityReport check_special_identities(int n, int m, Exponent p, int samples,
                                               uint64_t seed);

}  // namespace nclp
