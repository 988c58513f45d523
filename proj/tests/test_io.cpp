#include "doctest.h"
#include "fnorm/io.hpp"
#include "fnorm/norm_engine.hpp"

using namespace fnorm;

TEST_CASE("step functions round-trip") {
  StepFunction x = add(StepFunction::indicator(MeasureDomain::with_horizon(3), 0, 1, 2.0),
                       StepFunction::indicator(MeasureDomain::with_horizon(3), 1.5, 3, -1.0));
  CHECK(step_from_json(to_json(x)) == x);
  CHECK(step_from_json(parse_json_text(R"({"pieces": [[0, 0.5, 1]]})")) ==
        StepFunction::indicator(MeasureDomain::unit(), 0, 0.5));
}

TEST_CASE("spaces round-trip") {
  SemimodularFamily F;
  F.s = 1.0;
  F.domain = MeasureDomain::with_horizon(2);
  F.components = {ModularComponent::unweighted(OrliczFunction::power(2), F.domain, Operator::cesaro),
                  ModularComponent::unweighted(OrliczFunction::capped(2, 1.5), F.domain)};
  SpacePair P{OuterNorm::weighted_lp(2.0, {1.0, 2.0, 0.5}), F};
  SpacePair Q = space_from_json(to_json(P));
  CHECK(Q.f == P.f);
  CHECK(Q.family.components.size() == 2);
  CHECK(Q.family.components[0].op == Operator::cesaro);
  CHECK(Q.family.components[1].phi.b() == 2.0);
  StepFunction x = StepFunction::indicator(F.domain, 0, 1);
  CHECK(f_norm(Q, x).value == f_norm(P, x).value);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_json_text("{"), ParseError);
  CHECK_THROWS_AS(step_from_json(parse_json_text(R"({"pieces": [[0, 1]]})")), ParseError);
  CHECK_THROWS_AS(orlicz_from_json(parse_json_text(R"({"tag": "cosh"})")), ParseError);
  CHECK_THROWS_AS(outer_from_json(parse_json_text(R"({"tag": "l1"})")), ParseError);
  CHECK_THROWS_AS(space_from_json(parse_json_text(
                      R"({"f": {"tag": "l1", "n": 3}, "family": {"components": [{"phi": {"tag": "power", "p": 2}}]}})")),
                  ParseError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), ParseError);
}
