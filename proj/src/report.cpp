#include "fnorm/report.hpp"

namespace fnorm {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::vacuous:
      return "vacuous";
    case Verdict::evidence_only:
      return "evidence-only";
    case Verdict::hypothesis_missing:
      return "hypothesis-missing";
  }
  return "fail";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::fail:
      return 1;
    case Verdict::hypothesis_missing:
      return 2;
    default:
      return 0;
  }
}

namespace {

int severity(Verdict v) {
  switch (v) {
    case Verdict::fail:
      return 4;
    case Verdict::hypothesis_missing:
      return 3;
    case Verdict::evidence_only:
      return 2;
    case Verdict::vacuous:
      return 1;
    case Verdict::pass:
      return 0;
  }
  return 4;
}

}  // namespace

Verdict combine(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

json TrialConfig::to_json() const {
  return json{{"seed", seed},
              {"trials", trials},
              {"sequence_length", sequence_length},
              {"tolerances",
               {{"norm", tol_norm}, {"modular", tol_modular}, {"convergence", tol_convergence}}},
              {"amplitude_ratio", amplitude_ratio},
              {"support_ratio", support_ratio},
              {"ladders", ladders}};
}

json PropertyReport::to_json() const {
  json j{{"suite", suite}, {"verdict", to_string(verdict)}};
  if (!property.empty()) j["property"] = property;
  if (!witness.is_null()) j["witness"] = witness;
  j["summary"] = summary;
  j["trials"] = trials;
  j["config"] = config;
  return j;
}

}  // namespace fnorm
