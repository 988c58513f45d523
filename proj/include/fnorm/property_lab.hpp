#pragma once

// Randomised and constructive verification suites for the lattice
// properties of f-normed semimodular spaces.
//
// Each suite reports the observed outcome of the property ("holds" or
// "fails", with a witness for the latter) and a verdict: pass when the
// outcome agrees with what the theory predicts for the space, fail when it
// contradicts it, hypothesis-missing when the space lies outside the
// hypotheses of the prediction. Limit statements checked on finite ladders
// are evidence-only.

#include <string>
#include <vector>

#include "fnorm/norm_engine.hpp"
#include "fnorm/report.hpp"

namespace fnorm {

PropertyReport snorm_axioms_suite(const SpacePair& P, const TrialConfig& cfg);
PropertyReport fatou_suite(const SpacePair& P, const TrialConfig& cfg);
PropertyReport oc_suite(const SpacePair& P, const TrialConfig& cfg);
PropertyReport sm_suite(const SpacePair& P, const TrialConfig& cfg);

struct SmCertificate {
  StepFunction x;
  StepFunction y;
  double norm_x;
  double norm_y;
  double difference;
  double k0;
  double amplitude;  // min_i a_i k0^{1/s}
  json to_json() const;
};

/// x = y + min_i a_i k0^{1/s} chi_A with A the part of the window right of
/// supp(y). Throws when some a_i = 0 or y leaves no room.
SmCertificate counterexample_constructor(const SpacePair& P, const StepFunction& y,
                                         double eps = 1e-6);

PropertyReport um_suite(const SpacePair& P, const TrialConfig& cfg,
                        const std::vector<double>& eps_grid = {0.1, 0.3, 0.5, 0.7, 0.9});
PropertyReport llum_suite(const SpacePair& P, const TrialConfig& cfg);
PropertyReport ulum_oc_link_probe(const SpacePair& P, const TrialConfig& cfg,
                                  double eps_request = 0.1);
PropertyReport measure_convergence_probe(const SpacePair& P, const TrialConfig& cfg);
PropertyReport seven_way_dashboard(const SpacePair& P, const TrialConfig& cfg);

struct NonOcWitness {
  bool found = false;
  std::string schedule;
  std::vector<StepFunction> ladder;  // decreasing to 0 a.e., dominated by the first
  std::vector<double> norms;
  double min_norm = 0.0;
  json to_json() const;
};

/// Searches amplitude/support schedules for a dominated null ladder whose
/// norms stay >= threshold. The schedule m chi[0, e^{-m^2}) is tried first,
/// then a dyadic log-singular ladder.
NonOcWitness find_non_oc_witness(const SpacePair& P, const TrialConfig& cfg,
                                 double threshold = 0.1);

/// max_i phi_i satisfies Delta_2 according to the probe.
bool delta2_family(const SpacePair& P);

struct NamedSpace {
  std::string name;
  SpacePair space;
};

/// power p in {1.5, 2, 3} x f in {l1, l2, max} x {identity, Cesaro},
/// exp_minus_one x {l1, l2, max}, and power(2) + exp_minus_one with l1 on R^3,
/// all on the window [0, 2) with unit weights.
std::vector<NamedSpace> builtin_space_matrix();

/// Reduced trial counts used for matrix-wide runs.
TrialConfig matrix_config(std::uint64_t seed);

}  // namespace fnorm
