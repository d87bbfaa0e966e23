#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nclp/linear_map.hpp"
#include "nclp/lp.hpp"

namespace nclp {

/// Raised when a map fails the factorization conditions; carries the first
/// violated condition.
class NotSeparating : public Error {
 public:
  NotSeparating(const std::string& condition, const std::string& detail)
      : Error("not separating: condition " + condition + " (" + detail + ")"),
        condition_(condition) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// The (w, B, J) factorization of a separating map: partial isometry w,
/// positive B whose spectral projections commute with the range of J, and a
/// Jordan homomorphism J, with T(x) = w B J(x) and w* w = J(1) = s(B).
struct YeadonTriple {
  Element w;
  Element b;
  LinearMap jordan;  ///< algebra-level map, source -> target
};

struct SeparatingEvidence {
  bool separating = false;
  std::string violated;  ///< empty when separating
  std::optional<Element> witness_x;
  std::optional<Element> witness_y;
};

/// Randomized disjointness test (images of x = p a r, y = q b s with
/// p q = r s = 0 must stay disjoint) combined with extraction-based
/// validation. Returns a counterexample pair on failure.
SeparatingEvidence is_separating(const LinearMap& t, int trials, uint64_t seed);

/// Canonical extraction: (w, B) is the polar decomposition of T(1) and
/// J(x) = B^+ w* T(x). Validates the factorization conditions and the
/// Jordan property; throws NotSeparating on violation.
YeadonTriple extract_yeadon(const LinearMap& t);

/// Central projections (e, f) of the algebra generated by the Jordan image,
/// splitting J into a homomorphic part pi and an anti-homomorphic part
/// sigma. Commutative corners count as homomorphic.
struct JordanSplit {
  Element e;
  Element f;
  LinearMap pi;
  LinearMap sigma;
};

JordanSplit jordan_split(const LinearMap& jordan);

/// The decomposition of a bijective separating map into a direct summand
/// and an anti-direct summand, with the planted central projections on both
/// sides and the restricted maps.
struct BijectiveSplit {
  Element alpha;                  ///< central projection of the source, direct part
  Element beta;                   ///< central projection of the source, anti part
  std::vector<int> alpha_sites;
  std::vector<int> beta_sites;
  std::vector<int> n1_sites;      ///< target sites of the direct part
  std::vector<int> n2_sites;
  AlgebraSpec m1, m2, n1, n2;
  LinearMap t1;                   ///< direct factorization
  LinearMap t2;                   ///< anti-direct factorization
};

BijectiveSplit decompose_bijective(const LinearMap& t);

struct InverseAnalysis {
  LinearMap inverse;
  bool inverse_separating = false;
  bool jordan_inverse_matches = false;
};

/// Inverts the map, tests that the inverse is separating and that its
/// Jordan homomorphism is the inverse of the original one.
InverseAnalysis inverse_analysis(const LinearMap& t);

struct KernelSummand {
  Element m0_projection;  ///< central projection with ker T = L^p(M_0)
  std::vector<int> m0_sites;
  std::vector<int> complement_sites;
  AlgebraSpec complement;  ///< T restricted here is injective
};

KernelSummand kernel_summand(const LinearMap& t);

/// Assembles T(x) = w B J(x) after validating the triple's conditions.
LinearMap build_yeadon_map(const Element& w, const Element& b, const LinearMap& jordan, double p);

/// Multiplicativity defects of the restriction of a Jordan homomorphism to
/// a set of source sites, maximized over matrix-unit pairs. Both positive
/// means the corner is neither homomorphic nor anti-homomorphic.
struct CornerDefects {
  double mult = 0.0;
  double anti = 0.0;
};

CornerDefects corner_defects(const LinearMap& jordan, const std::vector<int>& source_sites);

/// max_z ||T(z*) - w T(z)* w|| over random probes, relative scale.
double adjoint_intertwining_defect(const LinearMap& t, const YeadonTriple& triple, int probes,
                                   uint64_t seed);

/// Direct maps satisfy T(z m) = T(z) J(m); anti-direct ones satisfy
/// T(m z) = T(z) J(m). Returns the relative defect over random probes.
double module_identity_defect(const LinearMap& t, const LinearMap& jordan, bool anti, int probes,
                              uint64_t seed);

}  // namespace nclp
