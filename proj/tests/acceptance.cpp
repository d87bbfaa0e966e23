// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nclp/random.hpp"
#include "nclp/separating.hpp"
#include "nclp/suites.hpp"
#include "nclp/valued_norms.hpp"

using namespace nclp;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const std::string& label, bool pass, double seconds, double budget,
            const std::string& detail) {
  bool ok = pass && seconds < budget;
  if (!ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.1f s of %.0f s) %s\n", ok ? "PASS" : "FAIL", id,
              label.c_str(), seconds, budget, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void criterion1() {
  struct Case {
    int n;
    double p;
    double lo_slack;
  };
  // lower must land in [expected - slack, expected]
  std::vector<Case> cases = {{2, 1.0, 1e-3}, {3, 1.0, 1e-3}, {2, 2.0, 1e-6},
                             {3, 2.0, 1e-6}, {2, 3.0, 5e-3}};
  for (const Case& c : cases) {
    Timer t;
    AlgebraSpec mn = make_algebra({{c.n, {1.0}}});
    LinearMap tn = LinearMap::transpose_map(mn, c.p);
    EstimateOptions opt;
    opt.m_max = c.n;
    opt.restarts = 4;
    opt.seed = 2024;
    NormEstimate est = cb_norm_estimate(tn, Exponent(c.p), opt);
    double expect = std::pow(c.n, 2.0 * std::abs(1.0 / c.p - 0.5));
    bool pass = est.lower >= expect - c.lo_slack && est.lower <= expect + 1e-12;
    report(1, "transposition cb constant n=" + std::to_string(c.n) + " p=" + fmt(c.p), pass,
           t.seconds(), 30.0, "lower=" + fmt(est.lower) + " expected=" + fmt(expect));
  }
}

void criterion2() {
  Timer t;
  AlgebraSpec m2 = make_algebra({{2, {1.0}}});
  S1Options opt;
  opt.seed = 7;
  opt.restarts = 4;
  double omega = s1_norm_upper(matrix_unit_family(m2, 0, 2, false), Exponent(1.0), opt).value;
  double swap = s1_norm_upper(matrix_unit_family(m2, 0, 2, true), Exponent(1.0), opt).value;
  double ratio = swap / omega;
  bool pass = std::abs(omega - 2.0) <= 1e-5 * 2.0 && std::abs(swap - 4.0) <= 1e-5 * 4.0 &&
              std::abs(ratio - 2.0) <= 1e-5 * 2.0;
  report(2, "S1 transposition constant at p=1, n=2", pass, t.seconds(), 10.0,
         "omega=" + fmt(omega) + " swap=" + fmt(swap) + " ratio=" + fmt(ratio));
}

void criterion3() {
  Timer t;
  std::vector<std::pair<AlgebraSpec, int>> shapes = {
      {make_algebra({{2, {1.0}}}), 2},
      {make_algebra({{3, {1.0}}}), 2},
      {make_algebra({{2, {1.0}}}), 3},
      {make_algebra({{1, {1.0, 1.0}}, {2, {1.0}}}), 2},
      {make_algebra({{2, {1.0, 0.5}}}), 2},
  };
  Rng rng(99);
  int samples = 105;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto& [spec, m] = shapes[static_cast<size_t>(k) % shapes.size()];
    AmplifiedElement x = random_amplified(spec, m, rng);
    S1Options opt;
    opt.seed = static_cast<uint64_t>(k);
    opt.restarts = 2;
    double upper = s1_norm_upper(x, Exponent(1.0), opt).value;
    double exact = amplified_norm(x, Exponent(1.0));
    worst = std::max(worst, std::abs(upper - exact) / exact);
  }
  report(3, "p=1 oracle equivalence on " + std::to_string(samples) + " samples", worst <= 1e-5,
         t.seconds(), 120.0, "worst relative deviation=" + fmt(worst));
}

void criterion4() {
  Timer t;
  double p_grid[] = {1.0, 2.0, 3.0};
  double worst_recovery = 0.0, worst_rep2 = 0.0, worst_rep3 = 0.0;
  int done = 0;
  uint64_t stream = 0;
  Rng master(777);
  while (done < 200) {
    Rng rng = master.fork(stream++);
    AlgebraSpec src = random_spec(rng, 3, 3, 16);
    PlantOptions opt;
    int kind = done % 3;  // direct-only, anti-only, mixed
    opt.allow_anti = kind != 0;
    opt.force_anti = kind == 1;
    opt.allow_kernel = (done % 5 == 0);
    double p = p_grid[done % 3];
    PlantedTriple plant = random_planted_triple(rng, src, p, opt);
    if (plant.target.dim() > 25 || src.dim() > 25) continue;

    LinearMap t_map = build_yeadon_map(plant.w, plant.b, plant.jordan, p);
    YeadonTriple got = extract_yeadon(t_map);
    worst_recovery = std::max({worst_recovery, l2_dist(got.w, plant.w),
                               l2_dist(got.b, plant.b),
                               (got.jordan.matrix - plant.jordan.matrix).norm()});
    worst_rep2 = std::max(worst_rep2,
                          adjoint_intertwining_defect(t_map, got, 20, 1000 + stream));
    bool pure_direct = plant.anti_sites.size() == 0 && kind == 0;
    bool pure_anti = plant.direct_sites.empty() && kind == 1;
    if (pure_direct)
      worst_rep3 = std::max(worst_rep3,
                            module_identity_defect(t_map, got.jordan, false, 20, 2000 + stream));
    if (pure_anti)
      worst_rep3 = std::max(worst_rep3,
                            module_identity_defect(t_map, got.jordan, true, 20, 3000 + stream));
    ++done;
  }
  bool pass = worst_recovery <= 1e-8 && worst_rep2 <= 1e-8 && worst_rep3 <= 1e-8;
  report(4, "Yeadon round trip on 200 triples", pass, t.seconds(), 60.0,
         "recovery=" + fmt(worst_recovery) + " adjoint-identity=" + fmt(worst_rep2) +
             " module-identity=" + fmt(worst_rep3));
}

void criterion5() {
  Timer t;
  double p_grid[] = {1.0, 1.5, 2.0, 3.0};
  double worst_proj = 0.0;
  int inverse_ok = 0;
  int done = 0;
  uint64_t stream = 0;
  Rng master(555);
  while (done < 50) {
    Rng rng = master.fork(stream++);
    AlgebraSpec src = random_spec(rng, 3, 3, 20);
    PlantOptions opt;
    opt.bijective = true;
    PlantedTriple plant = random_planted_triple(rng, src, p_grid[done % 4], opt);
    BijectiveSplit split = decompose_bijective(plant.map);
    worst_proj = std::max(
        {worst_proj,
         l2_dist(split.alpha, central_projection_from_sites(src, plant.direct_sites)),
         l2_dist(split.beta, central_projection_from_sites(src, plant.anti_sites))});
    InverseAnalysis inv = inverse_analysis(plant.map);
    if (inv.inverse_separating && inv.jordan_inverse_matches) ++inverse_ok;
    ++done;
  }
  bool pass = worst_proj <= 1e-8 && inverse_ok == 50;
  report(5, "bijective split pipeline on 50 maps", pass, t.seconds(), 60.0,
         "projection distance=" + fmt(worst_proj) + " inverse checks=" +
             std::to_string(inverse_ok) + "/50");
}

void criterion6() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (int degree : {1, 2, 3}) {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      SuiteReport r = suite_subhomogeneous_bounds(degree, Exponent(p), 50, 31337);
      if (!r.all_pass()) {
        pass = false;
        detail += " N=" + std::to_string(degree) + ",p=" + fmt(p);
      }
    }
  }
  report(6, "subhomogeneous transposition bounds, N<=3, four exponents", pass, t.seconds(),
         120.0, pass ? "all suites green" : ("failing:" + detail));
}

void criterion7() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (double p : {1.5, 2.0, 3.0}) {
    for (double eps : {0.25, 0.5}) {
      ExampleParams ep;
      ep.p = p;
      ep.epsilon = eps;
      ep.n_max = 4;
      ep.m_max = 2;
      ep.restarts = 6;
      ep.seed = 4242;
      SuiteReport r = run_example(ep);
      if (!r.all_pass()) {
        pass = false;
        detail += " p=" + fmt(p) + ",eps=" + fmt(eps);
      }
    }
  }
  report(7, "isometry family reproduction, six parameter sets", pass, t.seconds(), 180.0,
         pass ? "isometry, S1 bound and corner certificates green" : ("failing:" + detail));
}

void criterion8() {
  Timer t;
  int cb = suite_degree_detection(2.0, 1.0, DegreeBranch::Cb);
  int s1 = suite_degree_detection(2.5, 1.0, DegreeBranch::S1);
  bool pass = cb == 2 && s1 == 2;
  report(8, "degree detection integer parts", pass, t.seconds(), 5.0,
         "cb(K=2,p=1)=" + std::to_string(cb) + " s1(K=2.5)=" + std::to_string(s1));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
