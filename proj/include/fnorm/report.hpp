#pragma once

// Verdicts and reports shared by the probes and the property suites.

#include <cstdint>
#include <string>

#include "json.hpp"

namespace fnorm {

using json = nlohmann::ordered_json;

enum class Verdict { pass, fail, vacuous, evidence_only, hypothesis_missing };

std::string to_string(Verdict v);

/// CI contract: 0 for pass, vacuous and evidence-only; 1 fail; 2 missing hypothesis.
int exit_code(Verdict v);

/// Worst-first combination used when aggregating several reports.
Verdict combine(Verdict a, Verdict b);

struct TrialConfig {
  std::uint64_t seed = 1;
  int trials = 1000;
  int sequence_length = 20;
  double tol_norm = 1e-8;
  double tol_modular = 1e-9;
  double tol_convergence = 1e-6;
  // Geometric ladder ratios: amplitude factors and support shrink per step.
  double amplitude_ratio = 0.125;
  double support_ratio = 1.0 / 64.0;
  // Random targets per ladder suite (Fatou, OC, LLUM, measure).
  int ladders = 8;

  json to_json() const;
};

struct PropertyReport {
  std::string suite;
  Verdict verdict = Verdict::pass;
  // Observed outcome of the property itself: "holds", "fails" or empty. The
  // verdict instead records agreement with the prediction for this space.
  std::string property;
  json witness;  // null unless the verdict carries one
  json trials = json::array();
  json config = json::object();
  std::string summary;

  int exit_code() const { return fnorm::exit_code(verdict); }
  json to_json() const;
};

}  // namespace fnorm
