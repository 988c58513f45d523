#include <cmath>

#include "doctest.h"
#include "fnorm/modular.hpp"

using namespace fnorm;

namespace {

const MeasureDomain U = MeasureDomain::unit();
const MeasureDomain W2 = MeasureDomain::with_horizon(2.0);

ModularComponent comp(const OrliczFunction& phi, const MeasureDomain& d, Operator op = Operator::identity) {
  return ModularComponent::unweighted(phi, d, op);
}

}  // namespace

TEST_CASE("component evaluation") {
  CHECK(eval_component(comp(OrliczFunction::power(2), U), StepFunction::indicator(U, 0, 1)) == 1.0);
  CHECK(eval_component(comp(OrliczFunction::power(2), U), StepFunction::indicator(U, 0, 1, 2.0)) == 4.0);
  CHECK(eval_component(comp(OrliczFunction::power(1), U, Operator::cesaro), StepFunction::indicator(U, 0, 1)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  ModularComponent weighted = comp(OrliczFunction::power(2), W2);
  weighted.weight = StepFunction::indicator(W2, 0, 2, 3.0);
  CHECK(eval_component(weighted, StepFunction::indicator(W2, 0, 1)) == doctest::Approx(3.0));
}

TEST_CASE("identity pieces agree with quadrature") {
  ModularComponent c = comp(OrliczFunction::power(3), W2);
  StepFunction x = add(StepFunction::indicator(W2, 0, 0.5, 1.5), StepFunction::indicator(W2, 0.5, 1.75, 0.25));
  CHECK(eval_component(c, x, 1.3) ==
        doctest::Approx(eval_component(c, x, 1.3, EvalPath::quadrature)).epsilon(1e-10));
}

TEST_CASE("maximum over components and the cap") {
  SemimodularFamily F;
  F.domain = U;
  F.components = {comp(OrliczFunction::power(2), U), comp(OrliczFunction::power(4), U)};
  CHECK(eval_max(F, StepFunction::indicator(U, 0, 1, 2.0)) == 16.0);
  CHECK(eval_max(F, StepFunction(U)) == 0.0);
  SemimodularFamily capped = SemimodularFamily::single(OrliczFunction::capped(1, 2), U);
  CHECK(std::isinf(eval_max(capped, StepFunction::indicator(U, 0, 1, 2.0))));
  PreparedModular prep(F, StepFunction::indicator(U, 0, 1, 2.0));
  CHECK(prep.max(0.5) == doctest::Approx(1.0));
}

TEST_CASE("Cesaro components need a weight covering the window") {
  SemimodularFamily F = SemimodularFamily::single(OrliczFunction::power(2), W2, Operator::cesaro);
  F.components[0].weight = StepFunction::indicator(W2, 0, 1);
  CHECK_THROWS_AS(F.validate(), std::invalid_argument);
}

TEST_CASE("semimodular axioms") {
  auto p2 = SemimodularFamily::single(OrliczFunction::power(2), W2);
  CHECK(axiom_probe(p2, 200, 1).verdict == Verdict::pass);
  auto half = SemimodularFamily::single(OrliczFunction::s_composed(OrliczFunction::power(2), 0.5), W2,
                                        Operator::identity, 0.5);
  CHECK(axiom_probe(half, 200, 1).verdict == Verdict::pass);
  // |u|^{1/2} declared 1-convex.
  auto wrong = SemimodularFamily::single(OrliczFunction::s_composed(OrliczFunction::power(1), 0.5), W2);
  PropertyReport r = axiom_probe(wrong, 200, 1);
  CHECK(r.verdict == Verdict::fail);
  CHECK_FALSE(r.witness.is_null());
}

TEST_CASE("scaling lemma and superadditivity") {
  auto ces = SemimodularFamily::single(OrliczFunction::power(2), W2, Operator::cesaro);
  CHECK(scaling_lemma_probe(ces, 200, 2).verdict == Verdict::pass);
  CHECK(superadditivity_probe(ces, 100, 2).verdict == Verdict::pass);
  auto half = SemimodularFamily::single(OrliczFunction::s_composed(OrliczFunction::power(2), 0.5), W2,
                                        Operator::identity, 0.5);
  CHECK(scaling_lemma_probe(half, 200, 2).verdict == Verdict::pass);
}

TEST_CASE("left continuity") {
  auto p2 = SemimodularFamily::single(OrliczFunction::power(2), U);
  LeftContinuity lc = left_continuity_values(p2, StepFunction::indicator(U, 0, 1), 1.0, 20);
  CHECK(lc.target == doctest::Approx(1.0));
  CHECK(lc.values.back() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(lc.monotone_approach);
  CHECK(left_continuity_probe(p2, StepFunction::indicator(U, 0, 1), 1.0).verdict != Verdict::fail);
  auto cap = SemimodularFamily::single(OrliczFunction::capped(1, 2), U);
  LeftContinuity cc = left_continuity_values(cap, StepFunction::indicator(U, 0, 1), 1.0, 20);
  CHECK(cc.target == doctest::Approx(1.0));
  CHECK_FALSE(cc.target_infinite);
  CHECK(left_continuity_probe(cap, StepFunction::indicator(U, 0, 1), 1.0).verdict != Verdict::fail);
}

TEST_CASE("D-condition integrals") {
  ModularComponent c = comp(OrliczFunction::power(2), W2, Operator::cesaro);
  DConditionValues v = d_condition_values(c, 1.0, 2.0);
  CHECK(v.inner == doctest::Approx(1.5 - 2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(v.outer == 0.0);
  DConditionValues w = d_condition_values(c, 0.5, 1.0);
  // outer: int_1^2 (1/2)^2 / t^2 dt = 1/8.
  CHECK(w.outer == doctest::Approx(0.125).epsilon(1e-12));
  CHECK_THROWS_AS(d_condition_values(c, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(d_condition_values(comp(OrliczFunction::power(2), W2), 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("rho sequence condition") {
  auto p2 = SemimodularFamily::single(OrliczFunction::power(2), U);
  std::vector<StepFunction> xs;
  for (int m = 1; m <= 20; ++m) xs.push_back(StepFunction::indicator(U, 0, 1, 1.0 / m));
  CHECK(rho_sequence_condition(p2, xs).verdict != Verdict::fail);
  auto ex = SemimodularFamily::single(OrliczFunction::exp_minus_one(), W2);
  std::vector<StepFunction> ys;
  for (int m = 1; m <= 20; ++m) ys.push_back(StepFunction::indicator(W2, 0, std::exp(-m), m));
  CHECK(rho_sequence_condition(ex, ys).verdict == Verdict::vacuous);
  std::vector<StepFunction> zeros(5, StepFunction(U));
  CHECK(rho_sequence_condition(p2, zeros).verdict != Verdict::fail);
}
