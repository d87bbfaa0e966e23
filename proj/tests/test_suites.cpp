#include <doctest.h>

#include <cmath>

#include "nclp/serialize.hpp"
#include "nclp/suites.hpp"

using namespace nclp;

TEST_CASE("degree detection formulas") {
  CHECK(suite_degree_detection(2.0, 1.0, DegreeBranch::Cb) == 2);
  CHECK(suite_degree_detection(2.5, 2.0, DegreeBranch::S1) == 2);
  CHECK(suite_degree_detection(1.0, 3.0, DegreeBranch::S1) == 1);
  CHECK(suite_degree_detection(1.0, 1.0, DegreeBranch::Cb) == 1);
  // p = 3: exponent 1/3, so K = n^{1/3} detects n
  CHECK(suite_degree_detection(std::pow(3.0, 1.0 / 3.0), 3.0, DegreeBranch::Cb) == 3);
  CHECK_THROWS_AS(suite_degree_detection(2.0, 2.0, DegreeBranch::Cb), Error);
  CHECK_THROWS_AS(suite_degree_detection(0.5, 1.0, DegreeBranch::S1), Error);
}

TEST_CASE("subhomogeneous bounds suite") {
  SuiteReport r1 = suite_subhomogeneous_bounds(1, Exponent(1.0), 6, 7);
  CHECK(r1.all_pass());
  // degree one: every transposition ratio is 1
  for (const auto& c : r1.checks)
    if (c.check == "sp-transpose-bound") CHECK(c.measured == doctest::Approx(1.0).epsilon(1e-8));

  SuiteReport r2 = suite_subhomogeneous_bounds(2, Exponent(1.0), 6, 7);
  CHECK(r2.all_pass());
  bool found_sharp = false;
  for (const auto& c : r2.checks)
    if (c.check == "s1-sharpness") {
      found_sharp = true;
      CHECK(c.measured == doctest::Approx(2.0).epsilon(1e-4));
    }
  CHECK(found_sharp);

  SuiteReport r3 = suite_subhomogeneous_bounds(2, Exponent(2.0), 6, 7);
  CHECK(r3.all_pass());
}

TEST_CASE("direct maps suite") {
  SuiteReport r = suite_direct_maps(Exponent(1.0), 3, 11);
  CHECK(r.all_pass());
  bool contrast = false;
  for (const auto& c : r.checks)
    if (c.check == "cb-contrast") {
      contrast = true;
      CHECK(c.measured == doctest::Approx(2.0).epsilon(1e-3));
    }
  CHECK(contrast);
}

TEST_CASE("characterization suite") {
  SuiteReport r = suite_characterization(Exponent(1.0), 2, 13);
  CHECK(r.all_pass());
  for (const auto& c : r.checks)
    if (c.check == "degree-detected") CHECK(c.measured == doctest::Approx(c.bound));
}

TEST_CASE("example family: parameters and checks") {
  ExampleParams ep;
  ep.p = 2.0;
  ep.epsilon = 0.5;
  ep.n_max = 2;
  ep.m_max = 2;
  ep.restarts = 4;
  ep.seed = 3;
  SuiteReport r = run_example(ep);
  CHECK(r.all_pass());
  bool found_beta = false;
  for (const auto& [name, value] : r.params) {
    if (name == "beta_2") {
      found_beta = true;
      CHECK(value == doctest::Approx(1.25 / 3.0).epsilon(1e-12));
    }
  }
  CHECK(found_beta);
  for (const auto& c : r.checks) {
    if (c.check == "norm-preserved") CHECK(c.measured <= 1e-10);
    if (c.check == "neither-direct-nor-anti") CHECK(c.measured > 1e-6);
  }
}

TEST_CASE("example family rejects invalid parameters") {
  ExampleParams ep;
  ep.p = 1.0;  // requires p > 1
  CHECK_THROWS_AS(run_example(ep), Error);
  ep.p = 2.0;
  ep.epsilon = 1.5;  // beta_2 would leave (0, 1)
  CHECK_THROWS_AS(run_example(ep), Error);
  ep.epsilon = 0.5;
  ep.n_max = 1;
  CHECK_THROWS_AS(run_example(ep), Error);
  ep.n_max = 2;
  ep.m_max = 0;
  CHECK_THROWS_AS(run_example(ep), Error);
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  SuiteReport a = suite_subhomogeneous_bounds(2, Exponent(1.5), 4, 99);
  SuiteReport b = suite_subhomogeneous_bounds(2, Exponent(1.5), 4, 99);
  a.runtime_seconds = b.runtime_seconds = 0.0;
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_csv(a) == to_csv(b));
}
