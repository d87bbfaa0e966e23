#include <doctest.h>

#include "nclp/algebra.hpp"
#include "nclp/random.hpp"

using namespace nclp;

TEST_CASE("make_algebra validates its input") {
  CHECK_NOTHROW(make_algebra({{2, {1.0}}}));
  CHECK_NOTHROW(make_algebra({{1, {1.0, 1.0, 1.0}}}));
  CHECK_NOTHROW(make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}}));
  CHECK_THROWS_AS(make_algebra({}), Error);
  CHECK_THROWS_AS(make_algebra({{0, {1.0}}}), Error);
  CHECK_THROWS_AS(make_algebra({{2, {}}}), Error);
  CHECK_THROWS_AS(make_algebra({{2, {-1.0}}}), Error);
  CHECK_THROWS_AS(make_algebra({{2, {0.0}}}), Error);
}

TEST_CASE("block ordering and dimensions are deterministic") {
  AlgebraSpec spec = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  CHECK(spec.blocks()[0].n == 2);
  CHECK(spec.blocks()[1].n == 3);
  CHECK(spec.site_count() == 3);
  CHECK(spec.dim() == 4 + 9 + 9);
}

TEST_CASE("trace of identities") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  CHECK(trace(Element::identity(m2)).real() == doctest::Approx(2.0));

  AlgebraSpec mixed = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  CHECK(trace(Element::identity(mixed)).real() == doctest::Approx(5.0));

  Element offdiag = Element::matrix_unit(m2, 0, 0, 1);
  CHECK(std::abs(trace(offdiag)) == doctest::Approx(0.0));
}

TEST_CASE("trace is tracial and faithful") {
  AlgebraSpec spec = make_algebra({{2, {0.7}}, {1, {1.3, 0.4}}});
  Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    Element x = random_element(spec, rng);
    Element y = random_element(spec, rng);
    CHECK(std::abs(trace(x * y) - trace(y * x)) <= tol::alg * l2_norm(x) * l2_norm(y));
    double positive = trace(adjoint(x) * x).real();
    CHECK(positive >= 0.0);
    CHECK(positive >= (1.0 - 1e-12) * l2_norm(x) * l2_norm(x));
  }
  CHECK(trace(adjoint(Element::zero(spec)) * Element::zero(spec)).real() ==
        doctest::Approx(0.0));
}

TEST_CASE("matrix unit calculus") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  Element e11 = Element::matrix_unit(m2, 0, 0, 0);
  Element e12 = Element::matrix_unit(m2, 0, 0, 1);
  Element e21 = Element::matrix_unit(m2, 0, 1, 0);
  Element e22 = Element::matrix_unit(m2, 0, 1, 1);

  CHECK(l2_norm(e11 * e22) == doctest::Approx(0.0));
  CHECK(l2_dist(e12 * e21, e11) == doctest::Approx(0.0));
  CHECK(l2_dist(adjoint(e12), e21) == doctest::Approx(0.0));
}

TEST_CASE("algebra operations respect specs") {
  AlgebraSpec a = make_algebra({{2, {1.0}}});
  AlgebraSpec b = make_algebra({{2, {0.5}}});
  CHECK_THROWS_AS(Element::identity(a) * Element::identity(b), Error);
  CHECK_THROWS_AS(Element::identity(a) + Element::identity(b), Error);
}

TEST_CASE("adjoint is an involution and antihomomorphism") {
  AlgebraSpec spec = make_algebra({{3, {0.8}}, {2, {1.2}}});
  Rng rng(5);
  Element x = random_element(spec, rng);
  Element y = random_element(spec, rng);
  CHECK(l2_dist(adjoint(adjoint(x)), x) <= tol::alg * l2_norm(x));
  CHECK(l2_dist(adjoint(x * y), adjoint(y) * adjoint(x)) <=
        tol::alg * l2_norm(x) * l2_norm(y));
}

TEST_CASE("minimal central projections partition the identity") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  CHECK(minimal_central_projections(m2).size() == 1);

  AlgebraSpec abelian = make_algebra({{1, {1.0, 1.0}}});
  auto ps = minimal_central_projections(abelian);
  CHECK(ps.size() == 2);

  AlgebraSpec two = make_algebra({{2, {1.0}}, {3, {1.0}}});
  auto zs = minimal_central_projections(two);
  CHECK(zs.size() == 2);
  Element sum = Element::zero(two);
  for (const auto& z : zs) sum += z;
  CHECK(l2_dist(sum, Element::identity(two)) == doctest::Approx(0.0));
  for (size_t i = 0; i < zs.size(); ++i) {
    for (size_t j = 0; j < zs.size(); ++j) {
      Element prod = zs[i] * zs[j];
      if (i == j)
        CHECK(l2_dist(prod, zs[i]) <= tol::alg);
      else
        CHECK(l2_norm(prod) <= tol::alg);
    }
  }
  // centrality against random elements
  Rng rng(3);
  Element x = random_element(two, rng);
  for (const auto& z : zs) CHECK(l2_dist(z * x, x * z) <= tol::alg * l2_norm(x));
}

TEST_CASE("subhomogeneous degree is the largest block") {
  CHECK(subhomogeneous_degree(make_algebra({{1, {1.0, 1.0, 1.0}}})) == 1);
  CHECK(subhomogeneous_degree(make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}})) == 3);
  CHECK(subhomogeneous_degree(make_algebra({{4, {1.0}}})) == 4);
}

TEST_CASE("op_iso realizes the opposite algebra") {
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  Element e12 = Element::matrix_unit(m2, 0, 0, 1);
  Element e21 = Element::matrix_unit(m2, 0, 1, 0);
  CHECK(l2_dist(op_iso(e12), e21) == doctest::Approx(0.0));

  CHECK(opposite(m2) == m2);

  AlgebraSpec spec = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  Rng rng(11);
  for (int k = 0; k < 8; ++k) {
    Element x = random_element(spec, rng);
    Element y = random_element(spec, rng);
    CHECK(l2_dist(op_iso(op_iso(x)), x) <= tol::alg * l2_norm(x));
    CHECK(l2_dist(op_iso(x * y), op_iso(y) * op_iso(x)) <=
          tol::alg * l2_norm(x) * l2_norm(y));
    CHECK(std::abs(trace(op_iso(x)) - trace(x)) <= tol::alg * l2_norm(x));
  }
}

TEST_CASE("vectorize uses block-major point-major row-major order") {
  AlgebraSpec spec = make_algebra({{1, {1.0, 2.0}}, {2, {0.5}}});
  // sites: (block0,pt0) offset 0; (block0,pt1) offset 1; (block1,pt0) offset 2
  Element e = Element::matrix_unit(spec, 2, 0, 1);  // row 0, col 1 of the 2x2 site
  Vector v = vectorize(e);
  CHECK(v.size() == 6);
  CHECK(std::abs(v(3) - Complex(1.0, 0.0)) == doctest::Approx(0.0));
  Element back = devectorize(spec, v);
  CHECK(l2_dist(back, e) == doctest::Approx(0.0));

  auto w = coordinate_weights(spec);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(2.0));
  CHECK(w[2] == doctest::Approx(0.5));
  CHECK(w[5] == doctest::Approx(0.5));
}

TEST_CASE("sub_spec and direct_sum") {
  AlgebraSpec spec = make_algebra({{2, {1.0}}, {3, {0.5, 0.5}}});
  AlgebraSpec sub = sub_spec(spec, {2, 0});
  CHECK(sub.site_count() == 2);
  CHECK(sub.site(0).n == 3);
  CHECK(sub.site(1).n == 2);
  CHECK_THROWS_AS(sub_spec(spec, {}), Error);

  AlgebraSpec sum = direct_sum(spec, sub);
  CHECK(sum.dim() == spec.dim() + sub.dim());
}
