#include <doctest.h>

#include <cmath>

#include "nclp/lp.hpp"
#include "nclp/random.hpp"

using namespace nclp;

TEST_CASE("exponent validation and conjugate") {
  CHECK_THROWS_AS(Exponent(0.5), Error);
  CHECK(Exponent(2.0).conjugate() == doctest::Approx(2.0));
  CHECK(Exponent(1.5).conjugate() == doctest::Approx(3.0));
  CHECK_THROWS_AS(Exponent(1.0).conjugate(), Error);
}

TEST_CASE("lp_norm on explicit elements") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  Element d = Element::zero(m2);
  d.at(0)(0, 0) = 3.0;
  d.at(0)(1, 1) = 4.0;
  CHECK(lp_norm(d, Exponent(2.0)) == doctest::Approx(5.0));

  for (int n : {2, 3, 4}) {
    AlgebraSpec mn = make_algebra({{n, {1.0}}});
    CHECK(lp_norm(Element::identity(mn), Exponent(1.0)) == doctest::Approx(n));
  }

  Element nil = Element::matrix_unit(m2, 0, 0, 1);
  for (double p : {1.0, 1.7, 2.0, 3.5}) CHECK(lp_norm(nil, Exponent(p)) == doctest::Approx(1.0));
}

TEST_CASE("lp_norm invariances") {
  AlgebraSpec spec = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  Rng rng(2);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    Element x = random_element(spec, rng);
    Element u = random_unitary_element(spec, rng);
    Element v = random_unitary_element(spec, rng);
    double nx = lp_norm(x, Exponent(p));
    CHECK(lp_norm(adjoint(x), Exponent(p)) == doctest::Approx(nx).epsilon(1e-10));
    CHECK(lp_norm(u * x * v, Exponent(p)) == doctest::Approx(nx).epsilon(1e-10));
    // tau(|x|^p) recomputed from singular values
    double direct = 0.0;
    for (int s = 0; s < spec.site_count(); ++s) {
      for (double sigma : singular_values(x.at(s)))
        direct += spec.site(s).weight * std::pow(sigma, p);
    }
    CHECK(std::pow(nx, p) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("Hoelder inequality for the 2p pairing") {
  AlgebraSpec spec = make_algebra({{3, {0.9}}, {2, {1.1}}});
  Rng rng(8);
  for (double p : {1.0, 1.5, 2.0}) {
    for (int k = 0; k < 10; ++k) {
      Element x = random_element(spec, rng);
      Element y = random_element(spec, rng);
      CHECK(lp_norm(x * y, Exponent(p)) <=
            lp_norm(x, Exponent(2 * p)) * lp_norm(y, Exponent(2 * p)) + 1e-9);
    }
  }
}

TEST_CASE("polar decomposition") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});

  Element d = Element::zero(m2);
  d.at(0)(0, 0) = 2.0;
  auto pd = polar(d);
  CHECK(l2_dist(pd.w, Element::matrix_unit(m2, 0, 0, 0)) <= 1e-12);
  CHECK(l2_dist(pd.b, d) <= 1e-12);

  Rng rng(4);
  Element u = random_unitary_element(m2, rng);
  auto pu = polar(u);
  CHECK(l2_dist(pu.w, u) <= 1e-12);
  CHECK(l2_dist(pu.b, Element::identity(m2)) <= 1e-12);

  AlgebraSpec spec = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  for (int k = 0; k < 10; ++k) {
    Element x = random_element(spec, rng);
    auto p = polar(x);
    CHECK(l2_dist(x, p.w * p.b) <= 1e-8);
    CHECK(l2_dist(adjoint(p.w) * p.w, support_projection(p.b)) <= 1e-8);
    // b positive
    CHECK(l2_dist(p.b, adjoint(p.b)) <= 1e-10 * l2_norm(p.b));
  }
}

TEST_CASE("spectral projections") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  Element d = Element::zero(m2);
  d.at(0)(0, 0) = 1.0;
  d.at(0)(1, 1) = 3.0;
  CHECK(l2_dist(spectral_projection(d, 0.0, 2.0), Element::matrix_unit(m2, 0, 0, 0)) <= 1e-12);
  CHECK(l2_dist(spectral_projection(d, 0.0, 4.0), Element::identity(m2)) <= 1e-12);

  AlgebraSpec spec = make_algebra({{3, {1.0}}, {2, {0.5}}});
  Rng rng(6);
  for (int k = 0; k < 8; ++k) {
    Element h = random_self_adjoint(spec, rng);
    Element proj = spectral_projection(h, 0.0, 10.0);
    CHECK(l2_dist(proj * proj, proj) <= 1e-9);
    CHECK(l2_dist(proj * h, h * proj) <= 1e-9 * l2_norm(h));
  }

  Element notsa = Element::matrix_unit(m2, 0, 0, 1);
  CHECK_THROWS_AS(spectral_projection(notsa, 0.0, 1.0), Error);
}

TEST_CASE("eigen_clusters partitions the identity") {
  AlgebraSpec spec = make_algebra({{2, {1.0}}, {2, {0.5}}});
  Rng rng(12);
  Element h = random_self_adjoint(spec, rng);
  Element sum = Element::zero(spec);
  for (const auto& [mean, proj] : eigen_clusters(h)) sum += proj;
  CHECK(l2_dist(sum, Element::identity(spec)) <= 1e-10);
}

TEST_CASE("amplified norms") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  Rng rng(9);

  // m = 1 reduces to the plain norm
  Element x = random_element(m2, rng);
  AmplifiedElement one = AmplifiedElement::zero(m2, 1);
  one.entry(0, 0) = x;
  for (double p : {1.0, 2.0, 3.0})
    CHECK(amplified_norm(one, Exponent(p)) == doctest::Approx(lp_norm(x, Exponent(p))));

  // the matrix-unit family assembles to a rank-one with trace norm 2
  AmplifiedElement omega = AmplifiedElement::zero(m2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) omega.entry(i, j) = Element::matrix_unit(m2, 0, i, j);
  CHECK(amplified_norm(omega, Exponent(1.0)) == doctest::Approx(2.0));

  // the swapped family assembles to a unitary on dimension 4
  AmplifiedElement swap = AmplifiedElement::zero(m2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) swap.entry(i, j) = Element::matrix_unit(m2, 0, j, i);
  CHECK(amplified_norm(swap, Exponent(1.0)) == doctest::Approx(4.0));

  // assemble / disassemble round trip
  AmplifiedElement r = random_amplified(m2, 3, rng);
  AmplifiedElement back = disassemble(m2, 3, assemble(r));
  double dist = 0.0;
  for (size_t k = 0; k < r.entries.size(); ++k) dist += l2_dist(r.entries[k], back.entries[k]);
  CHECK(dist <= 1e-14);
}

TEST_CASE("transpose_outer") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  Rng rng(10);

  AmplifiedElement x = random_amplified(m2, 2, rng);
  // symmetric family is a fixed point
  AmplifiedElement sym = x;
  sym.entry(0, 1) = x.entry(1, 0);
  AmplifiedElement tsym = transpose_outer(sym);
  double d = 0.0;
  for (size_t k = 0; k < sym.entries.size(); ++k) d += l2_dist(sym.entries[k], tsym.entries[k]);
  CHECK(d <= 1e-14);

  // double application is the identity
  AmplifiedElement twice = transpose_outer(transpose_outer(x));
  d = 0.0;
  for (size_t k = 0; k < x.entries.size(); ++k) d += l2_dist(x.entries[k], twice.entries[k]);
  CHECK(d <= 1e-14);

  // applied to the matrix-unit family it gives the swapped family
  AmplifiedElement omega = AmplifiedElement::zero(m2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) omega.entry(i, j) = Element::matrix_unit(m2, 0, i, j);
  AmplifiedElement swapped = transpose_outer(omega);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(l2_dist(swapped.entry(i, j), Element::matrix_unit(m2, 0, j, i)) <= 1e-14);
}

TEST_CASE("opposite-algebra transposition identity for amplified norms") {
  Rng rng(13);
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  CHECK(check_optr_cb(random_amplified(m2, 2, rng), Exponent(1.0)));

  // diagonal families
  AmplifiedElement diag = AmplifiedElement::zero(m2, 2);
  diag.entry(0, 0) = random_element(m2, rng);
  diag.entry(1, 1) = random_element(m2, rng);
  CHECK(check_optr_cb(diag, Exponent(1.0)));

  AlgebraSpec mixed = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  CHECK(check_optr_cb(random_amplified(mixed, 2, rng), Exponent(3.0)));
}

TEST_CASE("inner and outer transposition agree in norm") {
  AlgebraSpec spec = make_algebra({{2, {1.0}}, {3, {0.7}}});
  Rng rng(14);
  for (double p : {1.0, 1.5, 3.0}) {
    AmplifiedElement x = random_amplified(spec, 2, rng);
    double inner = amplified_norm(transpose_inner(x), Exponent(p));
    double outer = amplified_norm(transpose_outer(x), Exponent(p));
    CHECK(inner == doctest::Approx(outer).epsilon(1e-8));
  }
  // p = 2: both transpositions are isometric
  AmplifiedElement x = random_amplified(spec, 3, rng);
  double base = amplified_norm(x, Exponent(2.0));
  CHECK(amplified_norm(transpose_outer(x), Exponent(2.0)) == doctest::Approx(base));
  CHECK(amplified_norm(transpose_inner(x), Exponent(2.0)) == doctest::Approx(base));
}

TEST_CASE("norm gradient matches finite differences") {
  AlgebraSpec spec = make_algebra({{2, {1.0}}, {2, {0.6}}});
  Rng rng(15);
  for (double p : {1.5, 2.0, 3.0}) {
    Element y = random_element(spec, rng);
    Element g = lp_norm_gradient(y, Exponent(p));
    Element gfd = lp_norm_gradient_fd(y, Exponent(p));
    CHECK(l2_dist(g, gfd) <= 1e-5 * std::max(1.0, l2_norm(g)));
  }
}
