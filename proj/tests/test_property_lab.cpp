#include <cmath>

#include "doctest.h"
#include "fnorm/property_lab.hpp"

using namespace fnorm;

namespace {

const MeasureDomain W2 = MeasureDomain::with_horizon(2.0);

SpacePair space(const OuterNorm& f, const OrliczFunction& phi, Operator op = Operator::identity) {
  return {f, SemimodularFamily::single(phi, W2, op)};
}

TrialConfig small() {
  TrialConfig c;
  c.trials = 60;
  c.ladders = 2;
  return c;
}

}  // namespace

TEST_CASE("s-norm axioms suite") {
  CHECK(snorm_axioms_suite(space(OuterNorm::l1(2), OrliczFunction::power(2)), small()).verdict == Verdict::pass);
}

TEST_CASE("Fatou ladder of a single indicator") {
  SpacePair P = space(OuterNorm::l1(2), OrliczFunction::power(2));
  StepFunction x = StepFunction::indicator(W2, 0, 1);
  for (int m = 1; m <= 10; ++m) {
    CHECK(f_norm(P, scale(x, 1.0 - std::ldexp(1.0, -m))).value ==
          doctest::Approx((1.0 - std::ldexp(1.0, -m)) * 2.0).epsilon(1e-12));
  }
  PropertyReport r = fatou_suite(P, small());
  CHECK(r.verdict == Verdict::evidence_only);
  CHECK(r.property == "holds");
  CHECK(fatou_suite(space(OuterNorm::l1(2), OrliczFunction::capped(1, 2)), small()).verdict ==
        Verdict::hypothesis_missing);
}

TEST_CASE("order continuity") {
  PropertyReport p = oc_suite(space(OuterNorm::l1(2), OrliczFunction::power(2)), small());
  CHECK(p.property == "holds");
  PropertyReport e = oc_suite(space(OuterNorm::l1(2), OrliczFunction::exp_minus_one()), small());
  CHECK(e.property == "fails");
  CHECK(e.verdict == Verdict::evidence_only);
  NonOcWitness w = find_non_oc_witness(space(OuterNorm::l1(2), OrliczFunction::exp_minus_one()), small());
  CHECK(w.found);
  CHECK(w.min_norm >= 0.1);
}

TEST_CASE("strict monotonicity dichotomy") {
  PropertyReport p = sm_suite(space(OuterNorm::l1(2), OrliczFunction::power(2)), small());
  CHECK(p.verdict == Verdict::pass);
  CHECK(p.property == "holds");
  SpacePair flat = space(OuterNorm::l1(2), OrliczFunction::flat_power(1, 2));
  SmCertificate c = counterexample_constructor(flat, StepFunction::indicator(W2, 0, 1));
  CHECK(c.k0 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(c.norm_y == doctest::Approx(2.0 * std::sqrt(2.0) - 2.0).epsilon(1e-10));
  CHECK(c.difference <= 1e-9);
  CHECK_FALSE(c.x == c.y);
  CHECK(sm_suite(flat, small()).property == "fails");
  CHECK(sm_suite(space(OuterNorm::max(2), OrliczFunction::power(2)), small()).verdict ==
        Verdict::hypothesis_missing);
  CHECK_THROWS_AS(counterexample_constructor(flat, StepFunction::indicator(W2, 0, 2)), std::invalid_argument);
  CHECK_THROWS_AS(counterexample_constructor(space(OuterNorm::l1(2), OrliczFunction::power(2)),
                                             StepFunction::indicator(W2, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("uniform monotonicity") {
  PropertyReport l1 = um_suite(space(OuterNorm::l1(2), OrliczFunction::power(2)), small());
  CHECK(l1.verdict == Verdict::evidence_only);
  CHECK(l1.property == "holds");
  CHECK(um_suite(space(OuterNorm::max(2), OrliczFunction::power(2)), small()).verdict ==
        Verdict::hypothesis_missing);
  PropertyReport ex = um_suite(space(OuterNorm::l1(2), OrliczFunction::exp_minus_one()), small());
  CHECK(ex.property == "fails");
}

TEST_CASE("lower and upper local uniform monotonicity") {
  CHECK(llum_suite(space(OuterNorm::l1(2), OrliczFunction::power(2)), small()).property == "holds");
  SpacePair E = space(OuterNorm::l1(2), OrliczFunction::exp_minus_one());
  CHECK(llum_suite(E, small()).property == "fails");
  PropertyReport u = ulum_oc_link_probe(E, small());
  CHECK(u.property == "fails");
  CHECK_THROWS_WITH_AS(ulum_oc_link_probe(space(OuterNorm::l1(2), OrliczFunction::power(2)), small()),
                       doctest::Contains("no non-OC witness"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(ulum_oc_link_probe(E, small(), 10.0), doctest::Contains("best achievable"),
                       std::invalid_argument);
}

TEST_CASE("convergence in measure") {
  CHECK(measure_convergence_probe(space(OuterNorm::l1(2), OrliczFunction::power(2)), small()).verdict ==
        Verdict::evidence_only);
  CHECK(measure_convergence_probe(space(OuterNorm::l1(2), OrliczFunction::flat_power(1, 2)), small()).verdict ==
        Verdict::hypothesis_missing);
}

TEST_CASE("dashboard rows") {
  PropertyReport p = seven_way_dashboard(space(OuterNorm::l1(2), OrliczFunction::power(2)), small());
  CHECK(p.verdict == Verdict::pass);
  CHECK(p.property == "holds");
  PropertyReport e = seven_way_dashboard(space(OuterNorm::l1(2), OrliczFunction::exp_minus_one()), small());
  CHECK(e.verdict == Verdict::pass);
  CHECK(e.property == "fails");
}

TEST_CASE("reports are deterministic under a fixed seed") {
  SpacePair P = space(OuterNorm::lp(2, 2.0), OrliczFunction::power(3), Operator::cesaro);
  CHECK(um_suite(P, small()).to_json().dump() == um_suite(P, small()).to_json().dump());
  CHECK(builtin_space_matrix().size() == 22);
}
