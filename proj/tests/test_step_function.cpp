#include <cmath>

#include "doctest.h"
#include "fnorm/quadrature.hpp"
#include "fnorm/random.hpp"
#include "fnorm/step_function.hpp"
#include "oracles.hpp"

using namespace fnorm;

namespace {

const MeasureDomain W3 = MeasureDomain::with_horizon(3.0);

StepFunction two_level() {
  return add(StepFunction::indicator(W3, 0.0, 1.0, 2.0), StepFunction::indicator(W3, 1.0, 3.0, 1.0));
}

}  // namespace

TEST_CASE("canonical form merges equal neighbours and drops trailing zeros") {
  std::vector<Piece> ps{{0.0, 1.0, 2.0}, {1.0, 1.5, 2.0}, {1.5, 2.0, 0.0}};
  StepFunction x = StepFunction::from_pieces(W3, ps);
  CHECK(x.size() == 1);
  CHECK(x.support_end() == 1.5);
  CHECK(x(1.2) == 2.0);
  CHECK(x(2.5) == 0.0);
  CHECK(StepFunction::indicator(W3, 0.0, 1.0, -0.0).is_zero());
}

TEST_CASE("malformed pieces are rejected") {
  std::vector<Piece> overlap{{0.0, 1.0, 1.0}, {0.5, 2.0, 1.0}};
  CHECK_THROWS_AS(StepFunction::from_pieces(W3, overlap), std::invalid_argument);
  std::vector<Piece> outside{{0.0, 4.0, 1.0}};
  CHECK_THROWS_AS(StepFunction::from_pieces(W3, outside), std::invalid_argument);
  CHECK_THROWS_AS(add(StepFunction::indicator(W3, 0, 1), StepFunction::indicator(MeasureDomain::unit(), 0, 1)),
                  DomainMismatch);
}

TEST_CASE("lattice operations") {
  StepFunction s = two_level();
  CHECK(s(0.5) == 2.0);
  CHECK(s(2.0) == 1.0);
  CHECK(absolute(StepFunction::indicator(W3, 0, 2, -3.0)) == StepFunction::indicator(W3, 0, 2, 3.0));
  StepFunction m = pointwise_min(StepFunction::indicator(W3, 0, 2, 2.0), StepFunction::indicator(W3, 1, 3, 1.0));
  CHECK(m(0.5) == 0.0);
  CHECK(m(1.5) == 1.0);
  CHECK(m(2.5) == 0.0);
  StepFunction M = pointwise_max(StepFunction::indicator(W3, 0, 2, 2.0), StepFunction::indicator(W3, 1, 3, 1.0));
  CHECK(M(2.5) == 1.0);
  CHECK(subtract(s, s).is_zero());
  CHECK(restrict_to(s, 0.5, 1.5) == add(StepFunction::indicator(W3, 0.5, 1.0, 2.0),
                                        StepFunction::indicator(W3, 1.0, 1.5, 1.0)));
  CHECK(dominated_by(StepFunction::indicator(W3, 0, 1), s));
  CHECK_FALSE(dominated_by(s, StepFunction::indicator(W3, 0, 1)));
}

TEST_CASE("integrate") {
  CHECK(integrate(two_level()) == 4.0);
  CHECK(integrate(StepFunction(W3)) == 0.0);
  CHECK(integrate(StepFunction::indicator(MeasureDomain::unit(), 0, 0.5, 0.5)) == 0.25);
}

TEST_CASE("distribution function uses strict inequality") {
  StepFunction x = two_level();
  CHECK(distribution(x, 1.5) == 1.0);
  CHECK(distribution(x, 0.5) == 3.0);
  CHECK(distribution(x, 2.0) == 0.0);
}

TEST_CASE("decreasing rearrangement") {
  StepFunction up = add(StepFunction::indicator(W3, 0, 1, 1.0), StepFunction::indicator(W3, 1, 2, 3.0));
  StepFunction down = add(StepFunction::indicator(W3, 0, 1, 3.0), StepFunction::indicator(W3, 1, 2, 1.0));
  CHECK(decreasing_rearrangement(up) == down);
  CHECK(decreasing_rearrangement(down) == down);
  StepFunction gap = add(StepFunction::indicator(W3, 0, 1, -2.0), StepFunction::indicator(W3, 2, 3, 1.0));
  StepFunction packed = add(StepFunction::indicator(W3, 0, 1, 2.0), StepFunction::indicator(W3, 1, 2, 1.0));
  CHECK(decreasing_rearrangement(gap) == packed);
}

TEST_CASE("equimeasurable") {
  CHECK(equimeasurable(StepFunction::indicator(W3, 0, 1), StepFunction::indicator(W3, 2, 3)));
  CHECK_FALSE(equimeasurable(StepFunction::indicator(W3, 0, 1), StepFunction::indicator(W3, 0, 1, 2.0)));
  for (int t = 0; t < 200; ++t) {
    auto rng = trial_engine(3, t);
    RandomStepOptions o;
    o.nonnegative = false;
    StepFunction x = random_step(rng, W3, o);
    StepFunction r = decreasing_rearrangement(x);
    CHECK(equimeasurable(x, r));
    for (double l : oracle::distribution_levels(x)) CHECK(distribution(r, l) == oracle::distribution(x, l));
  }
}

TEST_CASE("maximal function") {
  const MeasureDomain W2 = MeasureDomain::with_horizon(2.0);
  PiecewiseCurve m = maximal_function(StepFunction::indicator(W2, 0, 1));
  CHECK(m(2.0) == doctest::Approx(0.5));
  CHECK(m(0.5) == doctest::Approx(1.0));
  StepFunction x = add(StepFunction::indicator(W2, 0, 1, 3.0), StepFunction::indicator(W2, 1, 2, 1.0));
  CHECK(maximal_function(x)(2.0) == doctest::Approx(2.0));
  StepFunction y = add(StepFunction::indicator(W2, 0, 1, 1.0), StepFunction::indicator(W2, 1, 2, 3.0));
  CHECK(maximal_function(y)(0.5) == doctest::Approx(3.0));
  CHECK(maximal_function(y)(1.5) == doctest::Approx((3.0 + 0.5) / 1.5));
}

TEST_CASE("Cesaro transform against the running-average oracle") {
  const MeasureDomain W2 = MeasureDomain::with_horizon(2.0);
  PiecewiseCurve c = cesaro_transform(StepFunction::indicator(W2, 0, 1));
  CHECK(c(2.0) == doctest::Approx(0.5));
  CHECK(c(0.5) == doctest::Approx(1.0));
  CHECK(cesaro_transform(two_level())(3.0) == doctest::Approx(4.0 / 3.0));
  for (int t = 0; t < 100; ++t) {
    auto rng = trial_engine(5, t);
    RandomStepOptions o;
    o.nonnegative = false;
    StepFunction x = random_step(rng, W3, o);
    PiecewiseCurve cx = cesaro_transform(x);
    for (int k = 1; k <= 30; ++k) {
      double s = 3.0 * k / 30.0 - 1e-3;
      CHECK(cx(s) == doctest::Approx(oracle::cesaro(x, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("adaptive quadrature") {
  auto r = integrate_adaptive([](double t) { return std::exp(t); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK(r.converged);
  auto s = integrate_adaptive([](double t) { return 1.0 / (1.0 + 1e4 * t * t); }, -1.0, 1.0);
  CHECK(s.value == doctest::Approx(std::atan(100.0) / 50.0).epsilon(1e-12));
  auto inf = integrate_adaptive([](double t) { return t > 0.5 ? INFINITY : 1.0; }, 0.0, 1.0);
  CHECK(std::isinf(inf.value));
}
