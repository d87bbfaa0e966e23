#pragma once

#include <string>

#include <json.hpp>

#include "nclp/suites.hpp"

namespace nclp {

using Json = nlohmann::ordered_json;

// Schemas (values round-trip at full double precision):
//   AlgebraSpec      {"blocks":[{"n":int,"weights":[float,...]},...]}
//   Element          {"blocks":[[[[ [re,im],... ],...],...],...]}
//                    nested per (block, point, row, col)
//   LinearMap        {"source":spec,"target":spec,"p":float,
//                     "matrix":[[re,im],...]} flat row-major over
//                    (target coordinate, source coordinate); coordinates are
//                    block-major, point-major, row-major
//   AmplifiedElement {"m":int,"entries":[[element,...],...]}
//   NormEstimate     {"lower":float,"upper":float|null,"converged":bool,
//                     "iterations":int,"witness":amplified|null}
// Element and AmplifiedElement carry no spec of their own; deserialization
// takes the algebra from context.

Json to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const Json& j);

Json to_json(const Element& x);
Element element_from_json(const AlgebraSpec& spec, const Json& j);

Json to_json(const LinearMap& map);
LinearMap map_from_json(const Json& j);

Json to_json(const AmplifiedElement& x);
AmplifiedElement amplified_from_json(const AlgebraSpec& base, const Json& j);

Json to_json(const NormEstimate& est);

Json to_json(const SuiteReport& report);
std::string to_csv(const SuiteReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace nclp
