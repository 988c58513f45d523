#pragma once

// JSON encodings of the library's value types.

#include <stdexcept>
#include <string>

#include "fnorm/modular.hpp"
#include "fnorm/orlicz.hpp"
#include "fnorm/outer_norm.hpp"
#include "fnorm/report.hpp"
#include "fnorm/step_function.hpp"

namespace fnorm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpacePair;

json to_json(const MeasureDomain& d);
json to_json(const StepFunction& x);
json to_json(const OrliczFunction& phi);
json to_json(const OuterNorm& f);
json to_json(const ModularComponent& c);
json to_json(const SemimodularFamily& F);
json to_json(const SpacePair& P);

MeasureDomain domain_from_json(const json& j);
/// Pieces must be disjoint and ascending; the result is canonical.
StepFunction step_from_json(const json& j);
/// Domain given explicitly, overriding any "domain" entry.
StepFunction step_from_json(const json& j, const MeasureDomain& domain);
OrliczFunction orlicz_from_json(const json& j);
OuterNorm outer_from_json(const json& j);
SemimodularFamily family_from_json(const json& j);
SpacePair space_from_json(const json& j);

json parse_json_text(const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace fnorm
