#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nclp/separating.hpp"
#include "nclp/valued_norms.hpp"

namespace nclp {

struct CheckResult {
  std::string instance;
  std::string check;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

/// Pass/fail record of one verification suite. Deterministic for a fixed
/// seed; runtime is reported separately from the checks.
struct SuiteReport {
  int schema_version = 1;
  std::string suite;
  uint64_t seed = 0;
  double runtime_seconds = 0.0;
  std::vector<std::pair<std::string, double>> params;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  void add(const std::string& instance, const std::string& check, double measured, double bound,
           bool pass, const std::string& note = "");
};

/// On subhomogeneous algebras of the given degree: random amplified families
/// satisfy the transposition bounds (exact S^p norms; bracketed S1 norms),
/// and at p = 1 the matrix-unit witness is sharp.
SuiteReport suite_subhomogeneous_bounds(int degree, Exponent p, int samples, uint64_t seed);

enum class DegreeBranch { Cb, S1 };

/// Degree bound detected from a transposition constant K: the integer part
/// of K^(1/(2|1/2-1/p|)) on the S^p branch (p != 2), of K on the S1 branch.
int suite_degree_detection(double k, double p, DegreeBranch branch);

/// Random maps with a direct factorization have flat amplification norms:
/// the cb estimate stays at the plain norm. The blockwise transposition on
/// M_2 is the contrast case with a genuinely larger cb constant.
SuiteReport suite_direct_maps(Exponent p, int trials, uint64_t seed);

/// Planted direct (+) anti-direct surjective maps: the bijective split
/// recovers the planted projections, measured cb/S1 constants respect the
/// subhomogeneity bound of the anti summand, and degree detection from the
/// measured transposition constant returns the planted degree.
SuiteReport suite_characterization(Exponent p, int trials, uint64_t seed);

/// Parameters of the non-surjective isometry family over (+)_{2<=n<=n_max}
/// M_n: T(x) = ((1-beta_n)^(1/p) x_n, beta_n^(1/p) t_n(x_n)) with
/// beta_n = ((1+eps)^p - 1)/(n^p - 1).
struct ExampleParams {
  double p = 2.0;
  double epsilon = 0.5;
  int n_max = 4;
  int m_max = 2;
  int restarts = 8;
  uint64_t seed = 0;
};

/// Verifies that the family is an isometry, that its S1 amplification
/// estimates stay below (1+eps) with slack, and that no central corner of
/// its Jordan homomorphism is homomorphic or anti-homomorphic.
SuiteReport run_example(const ExampleParams& params);

}  // namespace nclp
