#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/linear_map.hpp"
#include "nclp/lp.hpp"

namespace nclp {

/// Deterministic seeded generator. The normal sampler is implemented on top
/// of the raw engine bits so streams are reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  double uniform();  ///< [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  ///< inclusive range
  double normal();
  Complex cnormal();  ///< standard complex Gaussian, E|z|^2 = 1

  /// Independent stream derived from this generator's seed and the stream
  /// index; forking does not disturb this generator's state.
  Rng fork(uint64_t stream) const;

 private:
  uint64_t seed_;
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Matrix random_ginibre(Rng& rng, int rows, int cols);
Matrix random_unitary_matrix(Rng& rng, int n);

Element random_element(const AlgebraSpec& spec, Rng& rng);
Element random_self_adjoint(const AlgebraSpec& spec, Rng& rng);
Element random_positive(const AlgebraSpec& spec, Rng& rng);
Element random_unitary_element(const AlgebraSpec& spec, Rng& rng);
AmplifiedElement random_amplified(const AlgebraSpec& spec, int m, Rng& rng);

/// Two mutually orthogonal nonzero projections with p + q <= 1, built from a
/// random eigenbasis. The second is zero when the algebra has dimension 1.
std::pair<Element, Element> random_orthogonal_projections(const AlgebraSpec& spec, Rng& rng);

/// Random spec with at most max_sites sites, block sizes <= max_n and total
/// dimension <= dim_cap.
AlgebraSpec random_spec(Rng& rng, int max_sites, int max_n, int dim_cap);

/// A generated map T(x) = w b J(x) together with its planted data.
struct PlantedTriple {
  AlgebraSpec source;
  AlgebraSpec target;
  double p = 2.0;
  Element w;
  Element b;
  LinearMap jordan;  ///< algebra-level map x -> J(x)
  LinearMap map;     ///< T
  std::vector<int> direct_sites;  ///< source sites realized only by direct copies
  std::vector<int> anti_sites;    ///< source sites realized only by anti copies
};

struct PlantOptions {
  bool bijective = false;
  bool allow_anti = true;
  bool force_anti = false;         ///< every copy of a size >= 2 site is anti
  bool allow_multiplicity = true;  ///< several copies of a source site
  bool allow_padding = true;       ///< dead corners in the target
  bool allow_kernel = false;       ///< source sites J may kill entirely
};

/// Builds a random Yeadon triple over the given source algebra and assembles
/// the induced map. Bijective plants permute the source sites into the
/// target; size-one sites are always planted direct so the split tie rule is
/// reproducible.
PlantedTriple random_planted_triple(Rng& rng, const AlgebraSpec& source, double p,
                                    const PlantOptions& opt);

}  // namespace nclp
