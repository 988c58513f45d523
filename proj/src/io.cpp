#include "fnorm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fnorm/norm_engine.hpp"

namespace fnorm {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  throw ParseError(std::string("expected a number for ") + what);
}

double number_field(const json& j, const char* key) { return number(field(j, key), key); }

json number_out(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

template <class F>
auto wrap(const char* what, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const MeasureDomain& d) {
  return json{{"kind", d.kind == MeasureDomain::Kind::unit ? "unit" : "horizon"}, {"T", d.horizon}};
}

json to_json(const StepFunction& x) {
  json pieces = json::array();
  for (const Piece& p : x.pieces()) pieces.push_back(json::array({p.start, p.end, p.value}));
  return json{{"domain", to_json(x.domain())}, {"pieces", pieces}};
}

json to_json(const OrliczFunction& phi) {
  using Tag = OrliczFunction::Tag;
  json j;
  switch (phi.tag()) {
    case Tag::power:
      j = {{"tag", "power"}, {"p", phi.p()}};
      break;
    case Tag::flat_power:
      j = {{"tag", "flat_power"}, {"a", phi.a()}, {"p", phi.p()}};
      break;
    case Tag::capped:
      j = {{"tag", "capped"}, {"b", phi.b()}, {"p", phi.p()}};
      break;
    case Tag::exp_minus_one:
      j = {{"tag", "exp_minus_one"}};
      break;
    case Tag::s_composed:
      j = {{"tag", "s_composed"}, {"base", to_json(*phi.base())}, {"s", phi.s()}};
      break;
  }
  return j;
}

json to_json(const OuterNorm& f) {
  using Tag = OuterNorm::Tag;
  switch (f.tag()) {
    case Tag::max:
      return {{"tag", "max"}, {"n", f.dimension()}};
    case Tag::l1:
      return {{"tag", "l1"}, {"n", f.dimension()}};
    case Tag::lp:
      return {{"tag", "lp"}, {"n", f.dimension()}, {"p", f.p()}};
    case Tag::weighted_lp:
      return {{"tag", "weighted_lp"}, {"p", number_out(f.p())}, {"weights", f.weights()}};
    case Tag::a_norm:
      return {{"tag", "a_norm"}, {"n", f.dimension()}};
  }
  return {};
}

json to_json(const ModularComponent& c) {
  return {{"phi", to_json(c.phi)}, {"weight", to_json(c.weight)}, {"operator", to_string(c.op)}};
}

json to_json(const SemimodularFamily& F) {
  json comps = json::array();
  for (const ModularComponent& c : F.components) comps.push_back(to_json(c));
  return {{"s", F.s}, {"domain", to_json(F.domain)}, {"components", comps}};
}

json to_json(const SpacePair& P) { return {{"f", to_json(P.f)}, {"family", to_json(P.family)}}; }

MeasureDomain domain_from_json(const json& j) {
  return wrap("domain", [&] {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "unit") return MeasureDomain::unit();
    if (kind == "horizon") return MeasureDomain::with_horizon(number_field(j, "T"));
    throw ParseError("unknown domain kind \"" + kind + "\"");
  });
}

StepFunction step_from_json(const json& j, const MeasureDomain& domain) {
  return wrap("step function", [&] {
    const json& pieces = field(j, "pieces");
    if (!pieces.is_array()) throw ParseError("\"pieces\" must be an array");
    std::vector<Piece> ps;
    for (const json& p : pieces) {
      if (!p.is_array() || p.size() != 3) throw ParseError("each piece must be [start, end, value]");
      ps.push_back({number(p[0], "piece start"), number(p[1], "piece end"), number(p[2], "piece value")});
    }
    return StepFunction::from_pieces(domain, ps);
  });
}

StepFunction step_from_json(const json& j) {
  MeasureDomain d = j.is_object() && j.contains("domain") ? domain_from_json(j["domain"])
                                                          : MeasureDomain::unit();
  return step_from_json(j, d);
}

OrliczFunction orlicz_from_json(const json& j) {
  return wrap("Orlicz function", [&] {
    std::string tag = field(j, "tag").get<std::string>();
    auto build = [&]() -> OrliczFunction {
      if (tag == "power") return OrliczFunction::power(number_field(j, "p"));
      if (tag == "flat_power") return OrliczFunction::flat_power(number_field(j, "a"), number_field(j, "p"));
      if (tag == "capped") return OrliczFunction::capped(number_field(j, "b"), number_field(j, "p"));
      if (tag == "exp_minus_one") return OrliczFunction::exp_minus_one();
      if (tag == "s_composed") {
        return OrliczFunction::s_composed(orlicz_from_json(field(j, "base")), number_field(j, "s"));
      }
      throw ParseError("unknown Orlicz tag \"" + tag + "\"");
    };
    OrliczFunction phi = build();
    if (j.contains("delta2_claimed") || j.contains("n_function_claimed")) {
      phi = phi.with_claims(j.value("delta2_claimed", phi.delta2_claimed()),
                            j.value("n_function_claimed", phi.n_function_claimed()));
    }
    return phi;
  });
}

OuterNorm outer_from_json(const json& j) {
  return wrap("outer norm", [&] {
    std::string tag = field(j, "tag").get<std::string>();
    if (tag == "weighted_lp") {
      std::vector<double> w;
      for (const json& v : field(j, "weights")) w.push_back(number(v, "weight"));
      return OuterNorm::weighted_lp(number_field(j, "p"), std::move(w));
    }
    int n = field(j, "n").get<int>();
    if (tag == "max") return OuterNorm::max(n);
    if (tag == "l1") return OuterNorm::l1(n);
    if (tag == "lp") return OuterNorm::lp(n, number_field(j, "p"));
    if (tag == "a_norm") return OuterNorm::a_norm(n);
    throw ParseError("unknown outer norm tag \"" + tag + "\"");
  });
}

SemimodularFamily family_from_json(const json& j) {
  return wrap("family", [&] {
    SemimodularFamily F;
    F.s = j.contains("s") ? number_field(j, "s") : 1.0;
    F.domain = j.contains("domain") ? domain_from_json(j["domain"]) : MeasureDomain::unit();
    for (const json& c : field(j, "components")) {
      ModularComponent comp = ModularComponent::unweighted(orlicz_from_json(field(c, "phi")), F.domain);
      if (c.contains("weight")) comp.weight = step_from_json(c["weight"], F.domain);
      std::string op = c.value("operator", "identity");
      if (op == "identity") {
        comp.op = Operator::identity;
      } else if (op == "cesaro") {
        comp.op = Operator::cesaro;
      } else if (op == "maximal_rearrangement" || op == "maximal") {
        comp.op = Operator::maximal_rearrangement;
      } else {
        throw ParseError("unknown operator \"" + op + "\"");
      }
      F.components.push_back(std::move(comp));
    }
    F.validate();
    return F;
  });
}

SpacePair space_from_json(const json& j) {
  return wrap("space", [&] {
    SpacePair P{outer_from_json(field(j, "f")), family_from_json(field(j, "family"))};
    P.validate();
    return P;
  });
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fnorm
