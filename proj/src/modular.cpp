#include "fnorm/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fnorm/io.hpp"
#include "fnorm/quadrature.hpp"
#include "fnorm/random.hpp"

namespace fnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct JointCell {
  double lo, hi, x, w;
};

// Common refinement of x and w, restricted to cells where both are nonzero.
std::vector<JointCell> joint_cells(const StepFunction& x, const StepFunction& w) {
  std::vector<double> b;
  auto bx = x.breakpoints();
  auto bw = w.breakpoints();
  std::merge(bx.begin(), bx.end(), bw.begin(), bw.end(), std::back_inserter(b));
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<JointCell> out;
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    double xv = x(b[j]);
    double wv = w(b[j]);
    if (xv != 0.0 && wv != 0.0) out.push_back({b[j], b[j + 1], xv, wv});
  }
  return out;
}

// Splits [lo, hi] so that consecutive cuts have ratio at most 4; hyperbolic
// integrands vary by at most that factor per sub-interval.
std::vector<double> geometric_cuts(double lo, double hi) {
  std::vector<double> cuts{lo};
  if (lo > 0.0) {
    for (double t = lo * 4.0; t < hi; t *= 4.0) cuts.push_back(t);
  }
  cuts.push_back(hi);
  return cuts;
}

double integrate_curve(const OrliczFunction& phi, const PiecewiseCurve& curve,
                       const StepFunction& w, double lambda, bool fast_path) {
  const double cap = phi.b_param();
  const QuadratureOptions opts;
  auto wb = w.breakpoints();
  double total = 0.0;
  for (const CurvePiece& seg : curve.segments()) {
    // Cut the segment at the weight breakpoints.
    std::vector<double> cuts{seg.start};
    for (double t : wb) {
      if (t > seg.start && t < seg.end) cuts.push_back(t);
    }
    cuts.push_back(seg.end);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      double wv = w(cuts[j]);
      if (wv == 0.0) continue;
      CurvePiece sub = seg;
      sub.start = cuts[j];
      sub.end = cuts[j + 1];
      if (!(sub.end > sub.start)) continue;
      if (lambda * sub.sup() > cap) return kInf;
      if (sub.shape == CurvePiece::Shape::constant && fast_path) {
        total += phi(lambda * sub.a) * wv * (sub.end - sub.start);
        continue;
      }
      auto g = [&](double t) { return phi(lambda * sub(t)); };
      std::vector<double> geo = geometric_cuts(sub.start, sub.end);
      for (std::size_t k = 0; k + 1 < geo.size(); ++k) {
        QuadratureResult q = integrate_adaptive(g, geo[k], geo[k + 1], opts);
        if (std::isinf(q.value)) return kInf;
        total += wv * q.value;
      }
    }
  }
  return total;
}

double curve_value(const ModularComponent& c, const StepFunction& x, double lambda,
                   bool fast_path) {
  PiecewiseCurve curve =
      c.op == Operator::cesaro ? cesaro_transform(x) : maximal_function(x);
  return integrate_curve(c.phi, curve, c.weight, lambda, fast_path);
}

json step_or_null(const StepFunction& x) { return to_json(x); }

}  // namespace

std::string to_string(Operator op) {
  switch (op) {
    case Operator::identity:
      return "identity";
    case Operator::cesaro:
      return "cesaro";
    case Operator::maximal_rearrangement:
      return "maximal_rearrangement";
  }
  return "identity";
}

ModularComponent ModularComponent::unweighted(const OrliczFunction& phi,
                                              const MeasureDomain& domain, Operator op) {
  return {phi, StepFunction::constant(domain, 1.0), op};
}

void SemimodularFamily::validate() const {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("family exponent s must lie in (0, 1]");
  if (components.empty()) throw std::invalid_argument("family needs at least one component");
  for (const ModularComponent& c : components) {
    if (!(c.weight.domain() == domain)) {
      throw DomainMismatch("component weight lives on " + to_string(c.weight.domain()) +
                           ", family on " + to_string(domain));
    }
    for (double v : c.weight.values()) {
      if (v < 0.0) throw std::invalid_argument("weights must be nonnegative");
    }
    if (c.op == Operator::cesaro) {
      // Cesaro components need w > 0 on the whole window.
      if (c.weight.support_end() < domain.horizon ||
          std::any_of(c.weight.values().begin(), c.weight.values().end(),
                      [](double v) { return v <= 0.0; })) {
        throw std::invalid_argument("Cesaro components need a strictly positive weight");
      }
    }
  }
}

SemimodularFamily SemimodularFamily::single(const OrliczFunction& phi, const MeasureDomain& domain,
                                            Operator op, double s) {
  SemimodularFamily F;
  F.s = s;
  F.domain = domain;
  F.components.push_back(ModularComponent::unweighted(phi, domain, op));
  return F;
}

double eval_component(const ModularComponent& c, const StepFunction& x, double lambda,
                      EvalPath path) {
  if (!(x.domain() == c.weight.domain())) {
    throw DomainMismatch("function and weight live on different domains");
  }
  if (x.is_zero() || lambda == 0.0) return 0.0;
  if (c.op != Operator::identity) {
    return curve_value(c, x, lambda, path == EvalPath::automatic);
  }
  double total = 0.0;
  for (const JointCell& cell : joint_cells(x, c.weight)) {
    double v = c.phi(lambda * cell.x);
    if (std::isinf(v)) return kInf;
    if (path == EvalPath::automatic) {
      total += v * cell.w * (cell.hi - cell.lo);
    } else {
      auto g = [&](double) { return c.phi(lambda * cell.x) * cell.w; };
      total += integrate_adaptive(g, cell.lo, cell.hi).value;
    }
  }
  return total;
}

std::vector<double> eval_all(const SemimodularFamily& F, const StepFunction& x, double lambda) {
  std::vector<double> out;
  out.reserve(F.components.size());
  for (const ModularComponent& c : F.components) out.push_back(eval_component(c, x, lambda));
  return out;
}

double eval_max(const SemimodularFamily& F, const StepFunction& x, double lambda) {
  double m = 0.0;
  for (const ModularComponent& c : F.components) {
    m = std::max(m, eval_component(c, x, lambda));
    if (std::isinf(m)) return m;
  }
  return m;
}

PreparedModular::PreparedModular(const SemimodularFamily& F, const StepFunction& x) : x_(x) {
  for (const ModularComponent& c : F.components) {
    if (!(x.domain() == c.weight.domain())) {
      throw DomainMismatch("function and weight live on different domains");
    }
    Entry e{&c, {}, std::nullopt};
    if (c.op == Operator::identity) {
      for (const JointCell& cell : joint_cells(x, c.weight)) {
        e.cells.push_back({cell.w * (cell.hi - cell.lo), std::abs(cell.x)});
      }
    } else if (!x.is_zero()) {
      e.curve = c.op == Operator::cesaro ? cesaro_transform(x) : maximal_function(x);
    }
    entries_.push_back(std::move(e));
  }
}

double PreparedModular::eval(const Entry& e, double lambda) const {
  if (x_.is_zero() || lambda == 0.0) return 0.0;
  const OrliczFunction& phi = e.component->phi;
  if (e.curve) return integrate_curve(phi, *e.curve, e.component->weight, lambda, true);
  double total = 0.0;
  for (const Cell& c : e.cells) {
    double v = phi(lambda * c.value);
    if (std::isinf(v)) return kInf;
    total += v * c.length_weight;
  }
  return total;
}

std::vector<double> PreparedModular::values(double lambda) const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(eval(e, lambda));
  return out;
}

double PreparedModular::max(double lambda) const {
  double m = 0.0;
  for (const Entry& e : entries_) {
    m = std::max(m, eval(e, lambda));
    if (std::isinf(m)) return m;
  }
  return m;
}

namespace {

bool within(double lhs, double rhs, double tol) {
  if (std::isinf(rhs)) return true;
  return lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
}

RandomStepOptions probe_options(bool nonnegative) {
  RandomStepOptions o;
  o.nonnegative = nonnegative;
  o.max_value = 1.5;
  return o;
}

}  // namespace

PropertyReport axiom_probe(const SemimodularFamily& F, int trials, std::uint64_t seed) {
  PropertyReport rep;
  rep.suite = "axioms";
  rep.config = {{"seed", seed}, {"trials", trials}, {"s", F.s}, {"tolerance", 1e-9}};
  const double tol = 1e-9;
  StepFunction zero(F.domain);
  if (eval_max(F, zero) != 0.0) {
    rep.verdict = Verdict::fail;
    rep.witness = {{"axiom", "rho(0)=0"}, {"value", eval_max(F, zero)}};
    return rep;
  }
  int checked = 0;
  for (int t = 0; t < trials && rep.verdict == Verdict::pass; ++t) {
    auto rng = trial_engine(seed, t);
    StepFunction x = random_step(rng, F.domain, probe_options(false));
    StepFunction y = random_step(rng, F.domain, probe_options(false));
    // (a) some dilation of a nonzero x has positive modular.
    bool positive = false;
    for (int j = -4; j <= 40 && !positive; j += 2) positive = eval_max(F, x, std::ldexp(1.0, j)) > 0.0;
    if (!positive) {
      rep.verdict = Verdict::fail;
      rep.witness = {{"axiom", "definiteness"}, {"x", step_or_null(x)}};
      break;
    }
    // (b) sign invariance.
    double rx = eval_max(F, x);
    double rmx = eval_max(F, scale(x, -1.0));
    if (!(rx == rmx || std::abs(rx - rmx) <= tol * std::max(1.0, std::abs(rx)))) {
      rep.verdict = Verdict::fail;
      rep.witness = {{"axiom", "sign invariance"}, {"x", step_or_null(x)}, {"rho(x)", rx},
                     {"rho(-x)", rmx}};
      break;
    }
    // (c) s-convex combination with a^s + b^s = 1.
    double a = uniform(rng, 0.01, 0.99);
    double b = std::pow(1.0 - std::pow(a, F.s), 1.0 / F.s);
    double ry = eval_max(F, y);
    if (std::isinf(rx) || std::isinf(ry)) continue;
    double lhs = eval_max(F, add(scale(x, a), scale(y, b)));
    double rhs = std::pow(a, F.s) * rx + std::pow(b, F.s) * ry;
    ++checked;
    if (t < 64) rep.trials.push_back({{"trial", t}, {"a", a}, {"lhs", lhs}, {"rhs", rhs}});
    if (!within(lhs, rhs, tol)) {
      rep.verdict = Verdict::fail;
      rep.witness = {{"axiom", "s-convexity"}, {"x", step_or_null(x)}, {"y", step_or_null(y)},
                     {"a", a}, {"b", b}, {"lhs", lhs}, {"rhs", rhs}};
    }
  }
  rep.summary = std::to_string(checked) + " s-convex combinations checked";
  return rep;
}

PropertyReport scaling_lemma_probe(const SemimodularFamily& F, int trials, std::uint64_t seed) {
  PropertyReport rep;
  rep.suite = "scaling";
  rep.config = {{"seed", seed}, {"trials", trials}, {"s", F.s}, {"tolerance", 1e-9}};
  int checked = 0;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_engine(seed, t);
    StepFunction x = random_step(rng, F.domain, probe_options(true));
    double d = t == 0 ? 1.0 : uniform(rng, 1.0, 8.0);
    double r1 = eval_max(F, x);
    double rd = eval_max(F, x, d);
    if (std::isinf(r1) || std::isinf(rd)) continue;
    ++checked;
    double rhs = std::pow(d, F.s) * r1;
    if (rd < rhs - 1e-9 * std::max(1.0, rhs)) {
      rep.verdict = Verdict::fail;
      rep.witness = {{"x", to_json(x)}, {"d", d}, {"rho(dx)", rd}, {"d^s rho(x)", rhs}};
      break;
    }
    if (t < 64) rep.trials.push_back({{"trial", t}, {"d", d}, {"rho(dx)", rd}, {"d^s rho(x)", rhs}});
  }
  rep.summary = std::to_string(checked) + " dilations checked";
  return rep;
}

PropertyReport superadditivity_probe(const SemimodularFamily& F, int trials, std::uint64_t seed) {
  PropertyReport rep;
  rep.suite = "superadditivity";
  rep.config = {{"seed", seed}, {"trials", trials}, {"tolerance", 1e-9}};
  json per = json::array();
  for (std::size_t i = 0; i < F.components.size(); ++i) {
    const ModularComponent& c = F.components[i];
    json entry{{"component", i}, {"phi", c.phi.describe()}, {"operator", to_string(c.op)},
               {"verdict", "pass"}};
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_engine(seed, t);
      StepFunction x = random_step(rng, F.domain, probe_options(true));
      StepFunction y = random_step(rng, F.domain, probe_options(true));
      double rx = eval_component(c, x);
      double ry = eval_component(c, y);
      double rxy = eval_component(c, add(x, y));
      if (std::isinf(rxy)) continue;
      double rhs = rx + ry;
      if (rxy < rhs - 1e-9 * std::max(1.0, rhs)) {
        entry["verdict"] = "fail";
        entry["witness"] = {{"x", to_json(x)}, {"y", to_json(y)}, {"rho(x+y)", rxy},
                            {"rho(x)+rho(y)", rhs}};
        if (rep.verdict == Verdict::pass) {
          rep.verdict = Verdict::fail;
          rep.witness = entry["witness"];
          rep.witness["component"] = i;
        }
        break;
      }
    }
    per.push_back(entry);
  }
  rep.trials = per;
  rep.summary = "per-component superadditivity";
  return rep;
}

LeftContinuity left_continuity_values(const SemimodularFamily& F, const StepFunction& x,
                                      double lambda0, int steps) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("lambda0 must be positive");
  LeftContinuity lc;
  lc.target = eval_max(F, x, lambda0);
  lc.target_infinite = std::isinf(lc.target);
  bool seen_finite = false;
  for (int j = 1; j <= steps; ++j) {
    double lam = lambda0 * (1.0 - std::ldexp(1.0, -j));
    double v = eval_max(F, x, lam);
    if (!lc.values.empty() && v < lc.values.back()) lc.monotone_approach = false;
    if (std::isfinite(v)) {
      seen_finite = true;
    } else if (seen_finite) {
      lc.cap_crossing = true;
    }
    lc.lambdas.push_back(lam);
    lc.values.push_back(v);
  }
  double last = lc.values.empty() ? 0.0 : lc.values.back();
  if (std::isinf(last) && lc.target_infinite) {
    lc.gap = 0.0;
  } else if (std::isinf(last) || lc.target_infinite) {
    lc.gap = kInf;
  } else {
    lc.gap = std::abs(lc.target - last);
  }
  return lc;
}

PropertyReport left_continuity_probe(const SemimodularFamily& F, const StepFunction& x,
                                     double lambda0, int steps) {
  LeftContinuity lc = left_continuity_values(F, x, lambda0, steps);
  PropertyReport rep;
  rep.suite = "left-continuity";
  rep.config = {{"lambda0", lambda0}, {"steps", steps}};
  json values = json::array();
  for (std::size_t j = 0; j < lc.values.size(); ++j) {
    values.push_back({{"lambda", lc.lambdas[j]},
                      {"value", std::isinf(lc.values[j]) ? json("inf") : json(lc.values[j])}});
  }
  rep.trials = values;
  double first_gap = lc.values.empty() ? 0.0 : std::abs(lc.target - lc.values.front());
  if (lc.gap == 0.0) {
    rep.verdict = Verdict::pass;
  } else if (!lc.target_infinite && lc.monotone_approach && std::isfinite(lc.gap) &&
             lc.gap <= first_gap * std::ldexp(1.0, -steps / 2)) {
    rep.verdict = Verdict::evidence_only;
  } else {
    rep.verdict = Verdict::fail;
    rep.witness = {{"x", to_json(x)}, {"lambda0", lambda0},
                   {"gap", std::isinf(lc.gap) ? json("inf") : json(lc.gap)}};
  }
  rep.summary = std::string("gap ") + (std::isinf(lc.gap) ? "inf" : std::to_string(lc.gap)) +
                (lc.target_infinite ? ", target infinite" : "") +
                (lc.cap_crossing ? ", cap crossing below lambda0" : "") +
                (lc.monotone_approach ? ", monotone approach" : ", non-monotone approach");
  return rep;
}

DConditionValues d_condition_values(const ModularComponent& c, double a, double b) {
  if (c.op != Operator::cesaro) throw std::invalid_argument("D-condition needs a Cesaro component");
  if (!(a >= 0.0 && a < b)) throw std::invalid_argument("D-condition needs 0 <= a < b");
  const double T = c.weight.domain().horizon;
  if (b > T) throw std::invalid_argument("D-condition needs b <= horizon");
  auto weighted = [&](auto g, double lo, double hi) {
    std::vector<double> cuts{lo};
    for (double t : c.weight.breakpoints()) {
      if (t > lo && t < hi) cuts.push_back(t);
    }
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      double wv = c.weight(cuts[j]);
      if (wv == 0.0) continue;
      for (double r = cuts[j], next; r < cuts[j + 1]; r = next) {
        next = r > 0.0 ? std::min(4.0 * r, cuts[j + 1]) : cuts[j + 1];
        total += wv * integrate_adaptive(g, r, next).value;
      }
    }
    return total;
  };
  double inner = weighted([&](double t) { return c.phi((t - a) / t); }, a, b);
  double outer = weighted([&](double t) { return c.phi((b - a) / t); }, b, T);
  return {a, b, inner, outer};
}

PropertyReport d_condition_check(const ModularComponent& c,
                                 std::span<const std::pair<double, double>> pairs) {
  PropertyReport rep;
  rep.suite = "d-condition";
  rep.verdict = Verdict::evidence_only;
  double prev_outer = -1.0;
  bool growing = false;
  for (const auto& [a, b] : pairs) {
    DConditionValues v = d_condition_values(c, a, b);
    if (prev_outer >= 0.0 && v.outer > prev_outer) growing = true;
    prev_outer = v.outer;
    rep.trials.push_back({{"a", a}, {"b", b}, {"inner", v.inner}, {"outer", v.outer}});
  }
  rep.summary = std::string("both integrals finite at the horizon") +
                (growing ? "; outer integral grows along the sweep (heuristic)" : "");
  return rep;
}

PropertyReport rho_sequence_condition(const SemimodularFamily& F,
                                      std::span<const StepFunction> xs, double tol) {
  PropertyReport rep;
  rep.suite = "rho-sequence";
  rep.config = {{"tolerance", tol}, {"length", xs.size()}};
  std::vector<double> r1, r2;
  for (const StepFunction& x : xs) {
    r1.push_back(eval_max(F, x));
    r2.push_back(eval_max(F, x, 2.0));
    rep.trials.push_back({{"rho(x)", r1.back()}, {"rho(2x)", r2.back()}});
  }
  auto tends_to_zero = [&](const std::vector<double>& r) {
    if (r.empty()) return true;
    std::size_t start = r.size() / 2;
    for (std::size_t j = start + 1; j < r.size(); ++j) {
      if (r[j] > r[j - 1] + tol) return false;
    }
    return r.back() <= std::max(tol, 0.5 * r[start]);
  };
  bool premise = tends_to_zero(r1);
  bool conclusion = tends_to_zero(r2);
  if (!premise) {
    rep.verdict = Verdict::vacuous;
    rep.summary = "rho(x_m) does not tend to 0 on the tail; implication vacuous";
  } else if (conclusion) {
    rep.verdict = Verdict::evidence_only;
    rep.summary = "rho(x_m) -> 0 and rho(2 x_m) -> 0 on the tail";
  } else {
    rep.verdict = Verdict::fail;
    rep.witness = {{"rho(x_last)", r1.back()}, {"rho(2x_last)", r2.back()}};
    rep.summary = "rho(x_m) -> 0 but rho(2 x_m) does not";
  }
  return rep;
}

}  // namespace fnorm
