#pragma once

// Semimodular families rho = max_i rho_i built from Orlicz functions,
// weights and the operators identity / Cesaro / maximal rearrangement.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fnorm/orlicz.hpp"
#include "fnorm/report.hpp"
#include "fnorm/step_function.hpp"

namespace fnorm {

enum class Operator { identity, cesaro, maximal_rearrangement };

std::string to_string(Operator op);

struct ModularComponent {
  OrliczFunction phi;
  StepFunction weight;  // positive on the region it covers
  Operator op = Operator::identity;

  /// Unit weight on the whole domain.
  static ModularComponent unweighted(const OrliczFunction& phi, const MeasureDomain& domain,
                                     Operator op = Operator::identity);
};

struct SemimodularFamily {
  double s = 1.0;
  std::vector<ModularComponent> components;
  MeasureDomain domain;

  /// Dimension of the outer norm the family pairs with.
  int n() const { return static_cast<int>(components.size()) + 1; }

  /// Throws std::invalid_argument when the invariants fail.
  void validate() const;

  /// Single unweighted component.
  static SemimodularFamily single(const OrliczFunction& phi, const MeasureDomain& domain,
                                  Operator op = Operator::identity, double s = 1.0);
};

enum class EvalPath { automatic, quadrature };

/// rho_i(lambda x): exact piece sum for identity components, adaptive
/// quadrature of phi(lambda G(x)(t)) w(t) otherwise. Returns +inf when phi
/// hits its cap on a set of positive measure.
double eval_component(const ModularComponent& c, const StepFunction& x, double lambda = 1.0,
                      EvalPath path = EvalPath::automatic);

/// max_i rho_i(lambda x).
double eval_max(const SemimodularFamily& F, const StepFunction& x, double lambda = 1.0);

/// All component values rho_i(lambda x).
std::vector<double> eval_all(const SemimodularFamily& F, const StepFunction& x,
                             double lambda = 1.0);

/// rho_i(lambda x) for one fixed x and many lambda: the Cesaro and maximal
/// curves and the identity cells are built once.
class PreparedModular {
 public:
  PreparedModular(const SemimodularFamily& F, const StepFunction& x);

  std::vector<double> values(double lambda) const;
  double max(double lambda) const;
  const StepFunction& function() const { return x_; }

 private:
  struct Cell {
    double length_weight;
    double value;
  };
  struct Entry {
    const ModularComponent* component;
    std::vector<Cell> cells;             // identity components
    std::optional<PiecewiseCurve> curve;  // Cesaro / maximal components
  };

  double eval(const Entry& e, double lambda) const;

  StepFunction x_;
  std::vector<Entry> entries_;
};

PropertyReport axiom_probe(const SemimodularFamily& F, int trials, std::uint64_t seed);
PropertyReport scaling_lemma_probe(const SemimodularFamily& F, int trials, std::uint64_t seed);
PropertyReport superadditivity_probe(const SemimodularFamily& F, int trials, std::uint64_t seed);

struct LeftContinuity {
  std::vector<double> lambdas;
  std::vector<double> values;
  double target = 0.0;
  double gap = 0.0;
  bool monotone_approach = true;
  bool target_infinite = false;
  bool cap_crossing = false;  // finite values followed by +inf below lambda0
};

LeftContinuity left_continuity_values(const SemimodularFamily& F, const StepFunction& x,
                                      double lambda0, int steps);
PropertyReport left_continuity_probe(const SemimodularFamily& F, const StepFunction& x,
                                     double lambda0, int steps = 20);

struct DConditionValues {
  double a, b;
  double inner;  // int_a^b phi((t - a) / t) w(t) dt
  double outer;  // int_b^T phi((b - a) / t) w(t) dt
};

/// Both integrals of the D-condition for a Cesaro component. Throws for
/// a >= b or a non-Cesaro component.
DConditionValues d_condition_values(const ModularComponent& c, double a, double b);
PropertyReport d_condition_check(const ModularComponent& c,
                                 std::span<const std::pair<double, double>> pairs);

/// Empirical check of rho(x_m) -> 0 => rho(2 x_m) -> 0 on the tail half.
PropertyReport rho_sequence_condition(const SemimodularFamily& F,
                                      std::span<const StepFunction> xs, double tol = 1e-8);

}  // namespace fnorm
