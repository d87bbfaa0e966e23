// Command-line front end: parse algebra/map JSON, run one computation or
// verification suite, emit a machine-readable report.
//
// Exit codes: 0 success, 1 a check failed (report still written), 2 input
// error. Reports embed the parameters and seed; the "run" object (timestamp,
// wall time) is the only part that varies between identical runs.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nclp/random.hpp"
#include "nclp/separating.hpp"
#include "nclp/serialize.hpp"
#include "nclp/suites.hpp"
#include "nclp/valued_norms.hpp"

using namespace nclp;

namespace {

std::string timestamp_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Emit {
  std::string out_path;
  bool csv = false;
};

std::string generic_csv(const Json& j) {
  std::string text = "key,value\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_object() || value.is_array()) continue;
    text += key + "," + value.dump() + "\n";
  }
  return text;
}

void emit_report(Json j, const Emit& emit, double seconds, const std::string& csv_text = "") {
  j["run"] = Json{{"timestamp", timestamp_now()}, {"runtime_seconds", seconds}};
  std::string text = emit.csv ? (csv_text.empty() ? generic_csv(j) : csv_text) : j.dump(2) + "\n";
  if (emit.out_path.empty())
    std::cout << text;
  else
    write_text_file(emit.out_path, text);
}

Element read_element_file(const std::string& path) {
  Json j = read_json_file(path);
  if (!j.contains("algebra") || !j.contains("element"))
    throw Error("element file needs {\"algebra\": ..., \"element\": ...}");
  AlgebraSpec spec = spec_from_json(j["algebra"]);
  return element_from_json(spec, j["element"]);
}

AmplifiedElement read_amplified_file(const std::string& path) {
  Json j = read_json_file(path);
  if (!j.contains("algebra") || !j.contains("amplified"))
    throw Error("amplified file needs {\"algebra\": ..., \"amplified\": ...}");
  AlgebraSpec spec = spec_from_json(j["algebra"]);
  return amplified_from_json(spec, j["amplified"]);
}

class Stopclock {
 public:
  Stopclock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for L^p norms, factorization norms and separating-map "
               "diagnostics on finite-dimensional tracial algebras"};
  app.require_subcommand(1);

  Emit emit;
  app.add_option("--out", emit.out_path, "write the report to a file instead of stdout");
  app.add_flag("--csv", emit.csv, "emit CSV instead of JSON");

  double p = 2.0;
  uint64_t seed = 0;
  int restarts = 8;
  int m_max = 0;
  int samples = 16;
  int trials = 8;
  int max_iter = 300;
  std::string element_path, amplified_path, map_path;

  auto* norm = app.add_subcommand("norm", "L^p norm of an element");
  norm->add_option("--p", p, "exponent")->required();
  norm->add_option("--element", element_path, "element file")->required();

  auto* s1norm = app.add_subcommand("s1norm", "S1-valued norm bracket of a family");
  s1norm->add_option("--p", p, "exponent")->required();
  s1norm->add_option("--amplified", amplified_path, "amplified element file")->required();
  s1norm->add_option("--restarts", restarts, "random restarts");
  s1norm->add_option("--seed", seed, "random seed");
  s1norm->add_option("--max-iter", max_iter, "sweep limit");

  auto* cbnorm = app.add_subcommand("cbnorm", "amplification norm estimate, S^p side");
  cbnorm->add_option("--p", p, "exponent")->required();
  cbnorm->add_option("--map", map_path, "linear map file")->required();
  cbnorm->add_option("--mmax", m_max, "largest amplification (0 = twice the block size)");
  cbnorm->add_option("--restarts", restarts, "random restarts");
  cbnorm->add_option("--seed", seed, "random seed");

  auto* s1bound = app.add_subcommand("s1bound", "amplification norm estimate, S1 side");
  s1bound->add_option("--p", p, "exponent")->required();
  s1bound->add_option("--map", map_path, "linear map file")->required();
  s1bound->add_option("--mmax", m_max, "largest amplification (0 = twice the block size)");
  s1bound->add_option("--restarts", restarts, "random restarts");
  s1bound->add_option("--samples", samples, "random inputs per level");
  s1bound->add_option("--seed", seed, "random seed");

  auto* yeadon = app.add_subcommand("yeadon", "extract and validate the (w, B, J) triple");
  yeadon->add_option("--map", map_path, "linear map file")->required();

  auto* split = app.add_subcommand("split", "split a Jordan homomorphism into parts");
  split->add_option("--map", map_path, "Jordan homomorphism file")->required();

  auto* decompose =
      app.add_subcommand("decompose", "direct/anti-direct split of a bijective map");
  decompose->add_option("--map", map_path, "linear map file")->required();

  auto* inverse = app.add_subcommand("inverse", "invert and analyze a bijective separating map");
  inverse->add_option("--map", map_path, "linear map file")->required();

  auto* kernel = app.add_subcommand("kernel", "central summand carrying the kernel");
  kernel->add_option("--map", map_path, "linear map file")->required();

  double kconst = 1.0;
  std::string branch = "cb";
  auto* degree = app.add_subcommand("degree", "degree bound from a transposition constant");
  degree->add_option("--K", kconst, "measured constant")->required();
  degree->add_option("--p", p, "exponent (S^p branch only)");
  degree->add_option("--branch", branch, "cb or s1")->check(CLI::IsMember({"cb", "s1"}));

  int degree_n = 2;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify
      ->add_option("suite", suite,
                   "subhomogeneous | direct-maps | characterization | special-identities")
      ->required()
      ->check(CLI::IsMember(
          {"subhomogeneous", "direct-maps", "characterization", "special-identities"}));
  verify->add_option("--N", degree_n, "degree (subhomogeneous) or block size (special)");
  verify->add_option("--p", p, "exponent");
  verify->add_option("--samples", samples, "samples per suite");
  verify->add_option("--trials", trials, "instances per suite");
  verify->add_option("--m", m_max, "amplification size (special-identities)");
  verify->add_option("--seed", seed, "random seed");

  double eps = 0.5;
  int n_max = 4;
  auto* example = app.add_subcommand("example", "run the non-surjective isometry family");
  example->add_option("--p", p, "exponent in (1, infinity)")->required();
  example->add_option("--eps", eps, "target S1 bound is 1 + eps")->required();
  example->add_option("--nmax", n_max, "largest block size");
  example->add_option("--mmax", m_max, "largest amplification");
  example->add_option("--restarts", restarts, "random restarts");
  example->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Stopclock clock;
  try {
    if (*norm) {
      Element x = read_element_file(element_path);
      Json j{{"command", "norm"}, {"p", p}, {"value", lp_norm(x, Exponent(p))}};
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*s1norm) {
      AmplifiedElement x = read_amplified_file(amplified_path);
      S1Options opt;
      opt.restarts = restarts;
      opt.seed = seed;
      opt.max_iter = max_iter;
      S1Upper up = s1_norm_upper(x, Exponent(p), opt);
      Json j{{"command", "s1norm"},
             {"p", p},
             {"seed", seed},
             {"restarts", restarts},
             {"upper", up.value},
             {"lower", s1_norm_lower(x, Exponent(p))},
             {"converged", up.converged},
             {"iterations", up.iterations}};
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*cbnorm || *s1bound) {
      LinearMap t = map_from_json(read_json_file(map_path));
      EstimateOptions opt;
      opt.m_max = m_max;
      opt.restarts = restarts;
      opt.samples = samples;
      opt.seed = seed;
      NormEstimate est = *cbnorm ? cb_norm_estimate(t, Exponent(p), opt)
                                 : s1_bounded_norm_estimate(t, Exponent(p), opt);
      Json j = to_json(est);
      j["command"] = *cbnorm ? "cbnorm" : "s1bound";
      j["p"] = p;
      j["seed"] = seed;
      j["m_max"] = opt.m_max;
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*yeadon) {
      LinearMap t = map_from_json(read_json_file(map_path));
      try {
        YeadonTriple triple = extract_yeadon(t);
        Json j{{"command", "yeadon"},
               {"separating", true},
               {"w", to_json(triple.w)},
               {"b", to_json(triple.b)},
               {"jordan", to_json(triple.jordan)}};
        emit_report(j, emit, clock.seconds());
        return 0;
      } catch (const NotSeparating& e) {
        Json j{{"command", "yeadon"}, {"separating", false}, {"condition", e.condition()}};
        emit_report(j, emit, clock.seconds());
        return 1;
      }
    }
    if (*split) {
      LinearMap jmap = map_from_json(read_json_file(map_path));
      JordanSplit js = jordan_split(jmap);
      Json j{{"command", "split"},
             {"e", to_json(js.e)},
             {"f", to_json(js.f)},
             {"pi", to_json(js.pi)},
             {"sigma", to_json(js.sigma)}};
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*decompose) {
      LinearMap t = map_from_json(read_json_file(map_path));
      BijectiveSplit bs = decompose_bijective(t);
      Json j{{"command", "decompose"},
             {"alpha", to_json(bs.alpha)},
             {"beta", to_json(bs.beta)},
             {"alpha_sites", bs.alpha_sites},
             {"beta_sites", bs.beta_sites},
             {"n1_sites", bs.n1_sites},
             {"n2_sites", bs.n2_sites},
             {"t1", to_json(bs.t1)},
             {"t2", to_json(bs.t2)}};
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*inverse) {
      LinearMap t = map_from_json(read_json_file(map_path));
      InverseAnalysis ia = inverse_analysis(t);
      Json j{{"command", "inverse"},
             {"separating", ia.inverse_separating},
             {"jordan_inverse_matches", ia.jordan_inverse_matches},
             {"inverse", to_json(ia.inverse)}};
      emit_report(j, emit, clock.seconds());
      return ia.inverse_separating && ia.jordan_inverse_matches ? 0 : 1;
    }
    if (*kernel) {
      LinearMap t = map_from_json(read_json_file(map_path));
      KernelSummand ks = kernel_summand(t);
      Json j{{"command", "kernel"},
             {"m0_sites", ks.m0_sites},
             {"m0_projection", to_json(ks.m0_projection)},
             {"complement",
              ks.complement_sites.empty() ? Json(nullptr) : to_json(ks.complement)}};
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*degree) {
      int n = suite_degree_detection(kconst, p,
                                     branch == "cb" ? DegreeBranch::Cb : DegreeBranch::S1);
      Json j{{"command", "degree"}, {"K", kconst}, {"branch", branch}, {"N", n}};
      if (branch == "cb") j["p"] = p;
      emit_report(j, emit, clock.seconds());
      return 0;
    }
    if (*verify) {
      SuiteReport report;
      if (suite == "subhomogeneous") {
        report = suite_subhomogeneous_bounds(degree_n, Exponent(p), samples, seed);
      } else if (suite == "direct-maps") {
        report = suite_direct_maps(Exponent(p), trials, seed);
      } else if (suite == "characterization") {
        report = suite_characterization(Exponent(p), trials, seed);
      } else {
        int m = m_max > 0 ? m_max : 2;
        SpecialIdentityReport sr =
            check_special_identities(degree_n, m, Exponent(p), samples, seed);
        report.suite = "special-identities";
        report.seed = seed;
        report.params = {{"n", static_cast<double>(degree_n)},
                         {"m", static_cast<double>(m)},
                         {"p", p},
                         {"samples", static_cast<double>(samples)}};
        report.add("random samples", "sp-transposition", sr.max_sp_dev, tol::norm_rel,
                   sr.sp_pass == sr.samples);
        report.add("random samples", "s1-transposition", sr.max_s1_dev, 1e-3,
                   sr.s1_pass == sr.samples);
      }
      emit_report(to_json(report), emit, clock.seconds(), to_csv(report));
      return report.all_pass() ? 0 : 1;
    }
    if (*example) {
      ExampleParams ep;
      ep.p = p;
      ep.epsilon = eps;
      ep.n_max = n_max;
      ep.m_max = m_max > 0 ? m_max : 2;
      ep.restarts = restarts;
      ep.seed = seed;
      SuiteReport report = run_example(ep);
      emit_report(to_json(report), emit, clock.seconds(), to_csv(report));
      return report.all_pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
