#include <cmath>

#include "doctest.h"
#include "fnorm/outer_norm.hpp"

using namespace fnorm;

TEST_CASE("evaluation") {
  CHECK(OuterNorm::l1(2)({1.0, 0.5}) == 1.5);
  CHECK(OuterNorm::max(3)({1.0, 2.0, 0.5}) == 2.0);
  CHECK(OuterNorm::a_norm(3)({1.0, 2.0, 0.5}) == 3.0);
  CHECK(OuterNorm::lp(2, 2.0)({3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(OuterNorm::weighted_lp(1.0, {2.0, 0.5})({1.0, 1.0}) == doctest::Approx(2.5));
  CHECK(std::isinf(OuterNorm::l1(2)({1.0, INFINITY})));
  CHECK_THROWS_AS(OuterNorm::l1(2)({1.0, 2.0, 3.0}), DimensionMismatch);
  CHECK(OuterNorm::lp(2, 1.0) == OuterNorm::l1(2));
  CHECK(OuterNorm::lp(2, INFINITY) == OuterNorm::max(2));
}

TEST_CASE("minimum basis value") {
  CHECK(min_basis_value(OuterNorm::l1(4)) == 1.0);
  CHECK(min_basis_value(OuterNorm::weighted_lp(1.0, {2.0, 0.5})) == 0.5);
  CHECK(min_basis_value(OuterNorm::a_norm(3)) == 1.0);
}

TEST_CASE("dual norms: closed forms against brute force") {
  CHECK(dual_norm(OuterNorm::l1(2), {1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(dual_norm(OuterNorm::max(2), {1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(dual_norm(OuterNorm::lp(2, 2.0), {3.0, 4.0}) == doctest::Approx(5.0));
  std::vector<OuterNorm> fs{OuterNorm::l1(2), OuterNorm::max(2), OuterNorm::lp(2, 3.0),
                            OuterNorm::weighted_lp(2.0, {1.0, 3.0}), OuterNorm::a_norm(2),
                            OuterNorm::a_norm(3)};
  for (const OuterNorm& f : fs) {
    std::vector<double> v(f.dimension(), 0.7);
    v[0] = 1.3;
    CHECK(dual_norm(f, v) == doctest::Approx(dual_norm_numeric(f, v)).epsilon(1e-4));
  }
}

TEST_CASE("equivalence constants") {
  auto a = equivalence_constants(OuterNorm::max(2), OuterNorm::l1(2));
  CHECK(a.m == doctest::Approx(1.0));
  CHECK(a.M == doctest::Approx(2.0));
  auto b = equivalence_constants(OuterNorm::l1(2), OuterNorm::l1(2));
  CHECK(b.m == doctest::Approx(1.0));
  CHECK(b.M == doctest::Approx(1.0));
  auto c = equivalence_constants(OuterNorm::l1(2), OuterNorm::lp(2, 2.0));
  CHECK(c.m == doctest::Approx(std::sqrt(0.5)));
  CHECK(c.M == doctest::Approx(1.0));
}

TEST_CASE("monotonicity modulus") {
  const ModulusTable& l1 = monotonicity_modulus(OuterNorm::l1(2), 64);
  CHECK(std::abs(l1.at(0.5) - 0.5) <= 1.0 / 64 + 1e-12);
  CHECK(l1.at(0.0) == 0.0);
  CHECK(modulus_positive(l1));
  const ModulusTable& mx = monotonicity_modulus(OuterNorm::max(2), 64);
  CHECK(mx.at(0.5) == 0.0);
  CHECK_FALSE(modulus_positive(mx));
  for (std::size_t i = 1; i < l1.delta.size(); ++i) CHECK(l1.delta[i] >= l1.delta[i - 1]);
  CHECK(modulus_positive(monotonicity_modulus(OuterNorm::lp(2, 2.0))));
}

TEST_CASE("crucial and strict monotonicity probe") {
  CrucialReport l1 = crucial_probe(OuterNorm::l1(2), 500, 1);
  CHECK(l1.crucial_holds);
  CHECK(l1.strict_holds);
  CrucialReport mx = crucial_probe(OuterNorm::max(2), 500, 1);
  CHECK(mx.crucial_holds);
  CHECK_FALSE(mx.strict_holds);
  CHECK(mx.strict_u == std::vector<double>{0.0, 1.0});
  CHECK(mx.strict_v == std::vector<double>{1.0, 1.0});
  CrucialReport an = crucial_probe(OuterNorm::a_norm(3), 500, 1);
  CHECK(an.crucial_holds);
  CHECK_FALSE(an.strict_holds);
  CHECK(an.strict_u == std::vector<double>{1.0, 0.0, 1.0});
  CHECK(an.strict_v == std::vector<double>{1.0, 1.0, 1.0});
}
