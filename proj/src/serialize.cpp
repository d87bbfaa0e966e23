#include "nclp/serialize.hpp"

#include <fstream>
#include <sstream>

namespace nclp {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("json: expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Json to_json(const AlgebraSpec& spec) {
  Json blocks = Json::array();
  for (const Block& b : spec.blocks()) {
    blocks.push_back(Json{{"n", b.n}, {"weights", b.weights}});
  }
  return Json{{"blocks", blocks}};
}

AlgebraSpec spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw Error("json: algebra spec must be {\"blocks\": [...]}");
  std::vector<Block> blocks;
  for (const Json& jb : j["blocks"]) {
    if (!jb.is_object() || !jb.contains("n") || !jb.contains("weights"))
      throw Error("json: each block needs \"n\" and \"weights\"");
    Block b;
    b.n = jb["n"].get<int>();
    for (const Json& w : jb["weights"]) b.weights.push_back(w.get<double>());
    blocks.push_back(std::move(b));
  }
  return AlgebraSpec(std::move(blocks));
}

Json to_json(const Element& x) {
  Json blocks = Json::array();
  int site = 0;
  for (const Block& b : x.spec().blocks()) {
    Json points = Json::array();
    for (size_t point = 0; point < b.weights.size(); ++point) {
      const Matrix& m = x.at(site++);
      Json rows = Json::array();
      for (int r = 0; r < b.n; ++r) {
        Json cols = Json::array();
        for (int c = 0; c < b.n; ++c) cols.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(cols));
      }
      points.push_back(std::move(rows));
    }
    blocks.push_back(std::move(points));
  }
  return Json{{"blocks", blocks}};
}

Element element_from_json(const AlgebraSpec& spec, const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw Error("json: element must be {\"blocks\": [...]}");
  const Json& blocks = j["blocks"];
  if (static_cast<int>(blocks.size()) != static_cast<int>(spec.blocks().size()))
    throw Error("json: element block count does not match the algebra");
  Element x = Element::zero(spec);
  int site = 0;
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = spec.blocks()[bi];
    const Json& points = blocks[bi];
    if (static_cast<int>(points.size()) != static_cast<int>(b.weights.size()))
      throw Error("json: element point count does not match the algebra");
    for (const Json& rows : points) {
      if (static_cast<int>(rows.size()) != b.n)
        throw Error("json: element matrix row count mismatch");
      Matrix& m = x.at(site++);
      for (int r = 0; r < b.n; ++r) {
        if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != b.n)
          throw Error("json: element matrix column count mismatch");
        for (int c = 0; c < b.n; ++c)
          m(r, c) = complex_from_json(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
      }
    }
  }
  return x;
}

Json to_json(const LinearMap& map) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < map.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < map.matrix.cols(); ++c)
      entries.push_back(complex_to_json(map.matrix(r, c)));
  return Json{{"source", to_json(map.source)},
              {"target", to_json(map.target)},
              {"p", map.p},
              {"matrix", entries}};
}

LinearMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("p") ||
      !j.contains("matrix"))
    throw Error("json: linear map needs source, target, p and matrix");
  AlgebraSpec source = spec_from_json(j["source"]);
  AlgebraSpec target = spec_from_json(j["target"]);
  double p = j["p"].get<double>();
  Exponent check(p);
  const Json& entries = j["matrix"];
  if (static_cast<int>(entries.size()) != source.dim() * target.dim())
    throw Error("json: matrix entry count does not match the algebra dimensions");
  Matrix m(target.dim(), source.dim());
  size_t idx = 0;
  for (int r = 0; r < target.dim(); ++r)
    for (int c = 0; c < source.dim(); ++c) m(r, c) = complex_from_json(entries[idx++]);
  return LinearMap{std::move(source), std::move(target), p, std::move(m)};
}

Json to_json(const AmplifiedElement& x) {
  Json rows = Json::array();
  for (int i = 0; i < x.m; ++i) {
    Json cols = Json::array();
    for (int j = 0; j < x.m; ++j) cols.push_back(to_json(x.entry(i, j)));
    rows.push_back(std::move(cols));
  }
  return Json{{"m", x.m}, {"entries", rows}};
}

AmplifiedElement amplified_from_json(const AlgebraSpec& base, const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("entries"))
    throw Error("json: amplified element needs m and entries");
  int m = j["m"].get<int>();
  AmplifiedElement x = AmplifiedElement::zero(base, m);
  const Json& rows = j["entries"];
  if (static_cast<int>(rows.size()) != m) throw Error("json: amplified row count mismatch");
  for (int i = 0; i < m; ++i) {
    const Json& cols = rows[static_cast<size_t>(i)];
    if (static_cast<int>(cols.size()) != m) throw Error("json: amplified column count mismatch");
    for (int c = 0; c < m; ++c)
      x.entry(i, c) = element_from_json(base, cols[static_cast<size_t>(c)]);
  }
  return x;
}

Json to_json(const NormEstimate& est) {
  Json j{{"lower", est.lower},
         {"upper", est.upper ? Json(*est.upper) : Json(nullptr)},
         {"converged", est.converged},
         {"iterations", est.iterations},
         {"witness", est.witness ? to_json(*est.witness) : Json(nullptr)}};
  return j;
}

Json to_json(const SuiteReport& report) {
  Json params = Json::object();
  for (const auto& [name, value] : report.params) params[name] = value;
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(Json{{"instance", c.instance},
                          {"check", c.check},
                          {"measured", c.measured},
                          {"bound", c.bound},
                          {"status", c.pass ? "pass" : "fail"},
                          {"note", c.note}});
  }
  return Json{{"schema_version", report.schema_version},
              {"suite", report.suite},
              {"seed", report.seed},
              {"params", params},
              {"all_pass", report.all_pass()},
              {"checks", checks}};
}

std::string to_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite,instance,check,measured,bound,status\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += "\"\"";
      q += ch;
    }
    q += "\"";
    return q;
  };
  out.precision(17);
  for (const CheckResult& c : report.checks) {
    out << quote(report.suite) << ',' << quote(c.instance) << ',' << quote(c.check) << ','
        << c.measured << ',' << c.bound << ',' << (c.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

}  // namespace nclp
