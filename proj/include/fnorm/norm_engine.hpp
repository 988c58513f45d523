#pragma once

// The f-norm ||x||_f = inf_{k>0} k f(e_1 + sum_i rho_{i-1}(x / k^{1/s}) e_i)
// and its special cases.

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fnorm/modular.hpp"
#include "fnorm/outer_norm.hpp"
#include "fnorm/report.hpp"

namespace fnorm {

class NotInSpace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpacePair {
  OuterNorm f;
  SemimodularFamily family;

  /// Dimension match and family invariants.
  void validate() const;
};

enum class NormCase { attained, limit_at_zero, zero_input };

std::string to_string(NormCase c);

struct NormResult {
  double value = 0.0;
  NormCase kase = NormCase::zero_input;
  double k0 = std::numeric_limits<double>::quiet_NaN();  // attained case only
  int evaluations = 0;
  bool tolerance_met = true;
  bool unimodal_observed = true;
  double limit_error = 0.0;  // extrapolation error estimate, limit case only

  json to_json() const;
};

struct NormOptions {
  double rel_tol_k = 1e-10;
  double abs_tol_v = 1e-12;
  int scan_exponent = 60;  // k = scale * 2^j, |j| <= scan_exponent
};

/// k f(1, rho_1(x / k^{1/s}), ..., rho_{n-1}(x / k^{1/s})), +inf if a modular is.
double objective(const SpacePair& P, const StepFunction& x, double k);

NormResult f_norm(const SpacePair& P, const StepFunction& x, const NormOptions& opts = {});

/// Scalar minimisation of an extended-real objective over k > 0, as used for
/// the primal and dual norms. `convex` enables the golden-section shortcut;
/// `tail` is the k -> 0 limit integrand used in the limit case.
NormResult minimize_over_k(const std::function<double(double)>& obj,
                           const std::function<double(double)>& tail, double scale, bool convex,
                           const NormOptions& opts = {});

/// inf{u > 0 : rho(x / u^{1/s}) <= 1} by bisection to relative width tol.
double luxemburg_s_norm(const SemimodularFamily& F, const StepFunction& x, double tol = 1e-12);

/// f_norm with f = l_p on R^2 (p = inf is max); single identity component, s = 1.
double amemiya_norm(const SemimodularFamily& F, const StepFunction& x, double p);

struct RegularityEvidence {
  bool regular = true;
  double norm = 0.0;
  double tail = 0.0;    // min objective over the smallest probe ks
  double margin = 0.0;  // tail - norm
  std::vector<double> ks;
  std::vector<double> objectives;
};

/// Objective at k = scale 2^-j, j = 0..40, compared against the norm.
RegularityEvidence regularity_check(const SpacePair& P, const StepFunction& x);

/// sum over pieces of w psi_Y(y / w) for an identity component with convex phi.
double dual_modular(const ModularComponent& c, const StepFunction& y);

/// inf_k k f*(1, rho*(y / k)) for n = 2, s = 1, identity component.
NormResult dual_f_norm(const SpacePair& P, const StepFunction& y);

PropertyReport dual_norm_inequality_probe(const SpacePair& P, const StepFunction& xstar,
                                          int trials, std::uint64_t seed);

PropertyReport modular_norm_bound_probe(const SpacePair& P, int trials, std::uint64_t seed);

}  // namespace fnorm
