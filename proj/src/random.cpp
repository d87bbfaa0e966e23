#include "nclp/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace nclp {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(uint64_t seed) : seed_(seed), state_(mix64(seed + kGolden)) {}

uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw Error("uniform_int: empty range");
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::cnormal() {
  double re = normal();
  double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

Rng Rng::fork(uint64_t stream) const { return Rng(mix64(seed_ ^ ((stream + 1) * kGolden))); }

Matrix random_ginibre(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.cnormal();
  return m;
}

Matrix random_unitary_matrix(Rng& rng, int n) {
  Matrix g = random_ginibre(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= a > 0 ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Element random_element(const AlgebraSpec& spec, Rng& rng) {
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(spec.site_count()));
  for (const Site& s : spec.sites()) data.push_back(random_ginibre(rng, s.n, s.n));
  return Element(spec, std::move(data));
}

Element random_self_adjoint(const AlgebraSpec& spec, Rng& rng) {
  Element g = random_element(spec, rng);
  return Complex(0.5, 0.0) * (g + adjoint(g));
}

Element random_positive(const AlgebraSpec& spec, Rng& rng) {
  Element g = random_element(spec, rng);
  return g * adjoint(g);
}

Element random_unitary_element(const AlgebraSpec& spec, Rng& rng) {
  std::vector<Matrix> data;
  data.reserve(static_cast<size_t>(spec.site_count()));
  for (const Site& s : spec.sites()) data.push_back(random_unitary_matrix(rng, s.n));
  return Element(spec, std::move(data));
}

AmplifiedElement random_amplified(const AlgebraSpec& spec, int m, Rng& rng) {
  AmplifiedElement x = AmplifiedElement::zero(spec, m);
  for (auto& e : x.entries) e = random_element(spec, rng);
  return x;
}

std::pair<Element, Element> random_orthogonal_projections(const AlgebraSpec& spec, Rng& rng) {
  Element h = random_self_adjoint(spec, rng);
  struct Vec {
    int site;
    int col;
  };
  std::vector<Vec> vecs;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  solvers.reserve(static_cast<size_t>(spec.site_count()));
  for (int s = 0; s < spec.site_count(); ++s) {
    solvers.emplace_back(h.at(s));
    for (int c = 0; c < spec.site(s).n; ++c) vecs.push_back(Vec{s, c});
  }
  for (size_t i = vecs.size(); i > 1; --i)
    std::swap(vecs[i - 1], vecs[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);

  Element p = Element::zero(spec);
  Element q = Element::zero(spec);
  for (size_t i = 0; i < vecs.size(); ++i) {
    int label;
    if (i == 0)
      label = 0;
    else if (i == 1 && vecs.size() > 1)
      label = 1;
    else
      label = rng.uniform_int(0, 2);
    if (label > 1) continue;
    const auto& es = solvers[static_cast<size_t>(vecs[i].site)];
    Matrix vv = es.eigenvectors().col(vecs[i].col) * es.eigenvectors().col(vecs[i].col).adjoint();
    if (label == 0)
      p.at(vecs[i].site) += vv;
    else
      q.at(vecs[i].site) += vv;
  }
  return {p, q};
}

AlgebraSpec random_spec(Rng& rng, int max_sites, int max_n, int dim_cap) {
  std::vector<Block> blocks;
  int dim = 0;
  int sites = 0;
  while (sites < max_sites) {
    int n = rng.uniform_int(1, max_n);
    int points = rng.uniform_int(1, 2);
    points = std::min(points, max_sites - sites);
    if (dim + points * n * n > dim_cap) {
      if (blocks.empty() && n > 1) {
        n = 1;
        points = 1;
        if (dim_cap < 1) throw Error("random_spec: dimension cap too small");
      } else {
        break;
      }
    }
    std::vector<double> weights;
    for (int k = 0; k < points; ++k) weights.push_back(rng.uniform(0.3, 2.0));
    blocks.push_back(Block{n, weights});
    dim += points * n * n;
    sites += points;
    if (rng.uniform() < 0.3) break;
  }
  if (blocks.empty()) blocks.push_back(Block{1, {1.0}});
  return AlgebraSpec(std::move(blocks));
}

namespace {

struct Copy {
  int source_site;
  bool anti;
  double lambda;
};

}  // namespace

PlantedTriple random_planted_triple(Rng& rng, const AlgebraSpec& source, double p,
                                    const PlantOptions& opt) {
  int S = source.site_count();
  std::vector<std::vector<Copy>> plan;

  if (opt.bijective) {
    std::vector<int> perm(static_cast<size_t>(S));
    std::iota(perm.begin(), perm.end(), 0);
    for (size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
    plan.resize(static_cast<size_t>(S));
    for (int t = 0; t < S; ++t) {
      int s = perm[static_cast<size_t>(t)];
      bool anti = opt.allow_anti && source.site(s).n >= 2 &&
                  (opt.force_anti || rng.uniform() < 0.5);
      plan[static_cast<size_t>(t)].push_back(Copy{s, anti, rng.uniform(0.6, 1.8)});
    }
  } else {
    int T = rng.uniform_int(1, std::min(3, std::max(1, S)));
    plan.resize(static_cast<size_t>(T));
    for (int s = 0; s < S; ++s) {
      if (opt.allow_kernel && rng.uniform() < 0.3) continue;
      bool anti = opt.allow_anti && source.site(s).n >= 2 &&
                  (opt.force_anti || rng.uniform() < 0.4);
      plan[static_cast<size_t>(rng.uniform_int(0, T - 1))].push_back(
          Copy{s, anti, rng.uniform(0.6, 1.8)});
    }
    if (opt.allow_multiplicity) {
      int extra = rng.uniform_int(0, 2);
      for (int e = 0; e < extra; ++e) {
        int s = rng.uniform_int(0, S - 1);
        bool used = false;
        for (const auto& t : plan)
          for (const auto& c : t)
            if (c.source_site == s) used = true;
        if (opt.allow_kernel && !used) continue;  // keep killed sites killed
        bool anti = opt.allow_anti && source.site(s).n >= 2 &&
                    (opt.force_anti || rng.uniform() < 0.4);
        plan[static_cast<size_t>(rng.uniform_int(0, T - 1))].push_back(
            Copy{s, anti, rng.uniform(0.6, 1.8)});
      }
    }
    bool any = false;
    for (const auto& t : plan) any = any || !t.empty();
    if (!any) {
      bool anti = opt.allow_anti && source.site(0).n >= 2 && rng.uniform() < 0.4;
      plan[0].push_back(Copy{0, anti, rng.uniform(0.6, 1.8)});
    }
  }

  // Assemble the target spec and the per-site rotations.
  std::vector<Block> tblocks;
  std::vector<int> paddings;
  std::vector<Matrix> rotations;
  for (size_t t = 0; t < plan.size(); ++t) {
    int n = 0;
    for (const Copy& c : plan[t]) n += source.site(c.source_site).n;
    int padding = 0;
    if (!opt.bijective && opt.allow_padding) padding = rng.uniform_int(0, 2);
    if (n + padding == 0) padding = 1;
    n += padding;
    paddings.push_back(padding);
    double weight =
        opt.bijective ? source.site(plan[t][0].source_site).weight : rng.uniform(0.5, 2.0);
    tblocks.push_back(Block{n, {weight}});
  }
  AlgebraSpec target(tblocks);
  Rng rot = rng.fork(0x726f74);
  for (int t = 0; t < target.site_count(); ++t)
    rotations.push_back(random_unitary_matrix(rot, target.site(t).n));

  auto embed = [&](const std::function<Matrix(const Copy&)>& fill) {
    Element out = Element::zero(target);
    for (int t = 0; t < target.site_count(); ++t) {
      int n = target.site(t).n;
      Matrix inner = Matrix::Zero(n, n);
      int off = 0;
      for (const Copy& c : plan[static_cast<size_t>(t)]) {
        int ns = source.site(c.source_site).n;
        inner.block(off, off, ns, ns) = fill(c);
        off += ns;
      }
      out.at(t) = rotations[static_cast<size_t>(t)] * inner *
                  rotations[static_cast<size_t>(t)].adjoint();
    }
    return out;
  };

  auto jordan_action = [&](const Element& x) {
    return embed([&](const Copy& c) -> Matrix {
      return c.anti ? x.at(c.source_site).transpose() : Matrix(x.at(c.source_site));
    });
  };

  PlantedTriple out;
  out.source = source;
  out.target = target;
  out.p = p;
  out.jordan = map_from_action(source, target, p, jordan_action);
  out.b = embed([&](const Copy& c) -> Matrix {
    int ns = source.site(c.source_site).n;
    return c.lambda * Matrix::Identity(ns, ns);
  });
  Element unit = embed([&](const Copy& c) -> Matrix {
    int ns = source.site(c.source_site).n;
    return Matrix::Identity(ns, ns);
  });
  Rng wr = rng.fork(0x77);
  Element wfull = random_unitary_element(target, wr);
  if (opt.bijective) {
    // On anti sites keep w a scalar phase: a non-central w twists the Jordan
    // homomorphism of the inverse map by conjugation, and the planted
    // instances are meant to satisfy J' = J^{-1} exactly.
    for (int t = 0; t < target.site_count(); ++t) {
      if (!plan[static_cast<size_t>(t)].empty() && plan[static_cast<size_t>(t)][0].anti) {
        double theta = wr.uniform(0.0, 2.0 * M_PI);
        int n = target.site(t).n;
        wfull.at(t) = std::polar(1.0, theta) * Matrix::Identity(n, n);
      }
    }
  }
  out.w = wfull * unit;

  const Element& w = out.w;
  const Element& b = out.b;
  out.map = map_from_action(source, target, p,
                            [&](const Element& x) { return w * (b * jordan_action(x)); });

  for (int s = 0; s < S; ++s) {
    int direct_copies = 0, anti_copies = 0;
    for (const auto& t : plan)
      for (const Copy& c : t) {
        if (c.source_site != s) continue;
        // A size-one copy is both a homomorphism and an anti-homomorphism;
        // count it as direct to match the split tie rule.
        if (c.anti && source.site(s).n >= 2)
          ++anti_copies;
        else
          ++direct_copies;
      }
    if (direct_copies > 0 && anti_copies == 0) out.direct_sites.push_back(s);
    if (anti_copies > 0 && direct_copies == 0) out.anti_sites.push_back(s);
  }
  return out;
}

}  // namespace nclp
