#include "fnorm/property_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fnorm/io.hpp"
#include "fnorm/random.hpp"

namespace fnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const char* kHolds = "holds";
const char* kFails = "fails";

double norm_of(const SpacePair& P, const StepFunction& x) { return f_norm(P, x).value; }

// Rescales x so that its norm equals target (s-homogeneity).
StepFunction normalized(const SpacePair& P, const StepFunction& x, double target = 1.0) {
  return scale(x, std::pow(target / norm_of(P, x), 1.0 / P.family.s));
}

double half_window(const SpacePair& P) { return 0.5 * P.family.domain.horizon; }

// Random nonnegative target supported in the left half of the window, so the
// right half stays free for disjoint constructions.
StepFunction random_target(const SpacePair& P, std::uint64_t seed, int t) {
  if (t == 0) return StepFunction::indicator(P.family.domain, 0.0, std::min(1.0, half_window(P)));
  auto rng = trial_engine(seed, t);
  RandomStepOptions o;
  o.support_fraction = 0.5;
  o.max_value = 1.5;
  return random_step(rng, P.family.domain, o);
}

bool all_identity(const SpacePair& P) {
  return std::all_of(P.family.components.begin(), P.family.components.end(),
                     [](const ModularComponent& c) { return c.op == Operator::identity; });
}

double min_a_param(const SpacePair& P) {
  double m = kInf;
  for (const ModularComponent& c : P.family.components) m = std::min(m, c.phi.a_param());
  return m;
}

json to_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(std::isinf(x) ? json("inf") : json(x));
  return a;
}

bool nondecreasing(const std::vector<double>& v, double tol) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - tol * std::max(1.0, std::abs(v[i - 1]))) return false;
  }
  return true;
}

bool nonincreasing(const std::vector<double>& v, double tol) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] + tol * std::max(1.0, std::abs(v[i - 1]))) return false;
  }
  return true;
}

// theta * log2-levels on dyadic shells: value theta j ln 2 on
// [L0 2^{-j-1}, L0 2^{-j}) for m <= j < levels, zero elsewhere. Behaves like
// theta ln(L0 / t) restricted to [0, L0 2^{-m}).
StepFunction log_singular(const MeasureDomain& d, double theta, int m, double L0, int levels = 60) {
  std::vector<Piece> pieces;
  for (int j = levels - 1; j >= m; --j) {
    pieces.push_back({std::ldexp(L0, -j - 1), std::ldexp(L0, -j), theta * j * std::log(2.0)});
  }
  return StepFunction::from_pieces(d, pieces);
}

struct Ladder {
  std::string name;
  std::vector<StepFunction> steps;
};

// x (1 - r^m), increasing to x.
Ladder amplitude_up(const StepFunction& x, const TrialConfig& cfg) {
  Ladder l{"amplitude", {}};
  for (int m = 1; m <= cfg.sequence_length; ++m) {
    l.steps.push_back(scale(x, 1.0 - std::pow(cfg.amplitude_ratio, m)));
  }
  return l;
}

// x chi[0, e (1 - q^m)), increasing to x.
Ladder truncation_up(const StepFunction& x, const TrialConfig& cfg) {
  Ladder l{"support-truncation", {}};
  double e = x.support_end();
  for (int m = 1; m <= cfg.sequence_length; ++m) {
    l.steps.push_back(restrict_to(x, 0.0, e * (1.0 - std::pow(cfg.support_ratio, m))));
  }
  return l;
}

// r^m x, decreasing to 0.
Ladder amplitude_down(const StepFunction& x, const TrialConfig& cfg) {
  Ladder l{"amplitude-decay", {}};
  for (int m = 1; m <= cfg.sequence_length; ++m) {
    l.steps.push_back(scale(x, std::pow(cfg.amplitude_ratio, m)));
  }
  return l;
}

// x chi[0, e q^m), decreasing to 0.
Ladder support_down(const StepFunction& x, const TrialConfig& cfg) {
  Ladder l{"support-shrink", {}};
  double e = x.support_end();
  for (int m = 1; m <= cfg.sequence_length; ++m) {
    l.steps.push_back(restrict_to(x, 0.0, e * std::pow(cfg.support_ratio, m)));
  }
  return l;
}

std::vector<double> norms_of(const SpacePair& P, const std::vector<StepFunction>& xs) {
  std::vector<double> out;
  for (const StepFunction& x : xs) out.push_back(norm_of(P, x));
  return out;
}

// Pieces that make up the disjoint-support constructions: a normalised
// indicator y on the right half of the window and its minimiser k0.
struct DisjointBase {
  StepFunction y;
  double k0;
};

DisjointBase disjoint_base(const SpacePair& P) {
  const MeasureDomain& d = P.family.domain;
  StepFunction y = normalized(P, StepFunction::indicator(d, half_window(P), d.horizon));
  NormResult r = f_norm(P, y);
  double k0 = r.kase == NormCase::attained ? r.k0 : 1.0;
  return {y, k0};
}

double k0_amplitude(const SpacePair& P, double k0) { return std::pow(k0, 1.0 / P.family.s); }

bool fatou_hypotheses(const SpacePair& P) {
  return std::all_of(P.family.components.begin(), P.family.components.end(),
                     [](const ModularComponent& c) {
                       return c.op != Operator::maximal_rearrangement &&
                              std::isinf(c.phi.b_param());
                     });
}

bool f_uniformly_monotone(const SpacePair& P) {
  return modulus_positive(monotonicity_modulus(P.f));
}

}  // namespace

json SmCertificate::to_json() const {
  return {{"x", fnorm::to_json(x)}, {"y", fnorm::to_json(y)}, {"norm_x", norm_x},
          {"norm_y", norm_y},       {"difference", difference}, {"k0", k0},
          {"amplitude", amplitude}};
}

json NonOcWitness::to_json() const {
  json j{{"found", found}, {"schedule", schedule}, {"norms", to_array(norms)}, {"min_norm", min_norm}};
  if (!ladder.empty()) j["last"] = fnorm::to_json(ladder.back());
  return j;
}

bool delta2_family(const SpacePair& P) {
  return std::all_of(P.family.components.begin(), P.family.components.end(),
                     [](const ModularComponent& c) { return delta2_probe(c.phi).holds; });
}

PropertyReport snorm_axioms_suite(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "snorm-axioms";
  rep.config = cfg.to_json();
  const double s = P.family.s;
  const double tol = cfg.tol_norm;
  int violations = 0;
  auto violate = [&](json w) {
    if (violations++ == 0) rep.witness = std::move(w);
  };
  if (norm_of(P, StepFunction(P.family.domain)) != 0.0) violate({{"axiom", "norm of zero"}});
  RandomStepOptions o;
  o.nonnegative = false;
  o.max_value = 1.5;
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_engine(cfg.seed, t);
    StepFunction x = random_step(rng, P.family.domain, o);
    StepFunction y = random_step(rng, P.family.domain, o);
    double nx = norm_of(P, x);
    double ny = norm_of(P, y);
    double nxy = norm_of(P, add(x, y));
    if (nxy > nx + ny + tol * std::max(1.0, nx + ny)) {
      violate({{"axiom", "triangle"}, {"x", to_json(x)}, {"y", to_json(y)}, {"norm_x", nx},
               {"norm_y", ny}, {"norm_sum", nxy}});
    }
    double lambda = uniform(rng, 0.1, 10.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    double nl = norm_of(P, scale(x, lambda));
    double expect = std::pow(std::abs(lambda), s) * nx;
    if (std::abs(nl - expect) > tol * std::max(1.0, expect)) {
      violate({{"axiom", "s-homogeneity"}, {"x", to_json(x)}, {"lambda", lambda},
               {"norm_scaled", nl}, {"expected", expect}});
    }
    if (!(nx > 0.0)) violate({{"axiom", "definiteness"}, {"x", to_json(x)}, {"norm", nx}});
    if (t < 32) {
      rep.trials.push_back({{"trial", t}, {"norm_x", nx}, {"norm_y", ny}, {"norm_sum", nxy},
                            {"lambda", lambda}, {"norm_scaled", nl}});
    }
  }
  rep.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
  rep.property = violations == 0 ? kHolds : kFails;
  rep.summary = std::to_string(violations) + " violations in " + std::to_string(cfg.trials) +
                " trials";
  return rep;
}

PropertyReport fatou_suite(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "fatou";
  rep.config = cfg.to_json();
  if (!fatou_hypotheses(P)) {
    rep.verdict = Verdict::hypothesis_missing;
    rep.summary = "needs identity or Cesaro components with finite Orlicz functions";
    return rep;
  }
  rep.verdict = Verdict::evidence_only;
  rep.property = kHolds;
  double worst = 0.0;
  for (int t = 0; t < cfg.ladders; ++t) {
    StepFunction x = random_target(P, cfg.seed, t);
    double nx = norm_of(P, x);
    for (const Ladder& l : {amplitude_up(x, cfg), truncation_up(x, cfg)}) {
      std::vector<double> ns = norms_of(P, l.steps);
      double gap = std::abs(ns.back() - nx);
      worst = std::max(worst, gap);
      bool ok = nondecreasing(ns, cfg.tol_norm) && gap <= cfg.tol_convergence;
      rep.trials.push_back({{"trial", t}, {"ladder", l.name}, {"norm_limit", nx},
                            {"norms", to_array(ns)}, {"final_gap", gap}, {"ok", ok}});
      if (!ok && rep.verdict != Verdict::fail) {
        rep.verdict = Verdict::fail;
        rep.property = kFails;
        rep.witness = {{"x", to_json(x)}, {"ladder", l.name}, {"norms", to_array(ns)},
                       {"norm_limit", nx}};
      }
    }
  }
  rep.summary = "worst final gap " + std::to_string(worst);
  return rep;
}

NonOcWitness find_non_oc_witness(const SpacePair& P, const TrialConfig& cfg, double threshold) {
  const MeasureDomain& d = P.family.domain;
  const int L = cfg.sequence_length;
  NonOcWitness best;
  auto consider = [&](NonOcWitness w) {
    w.min_norm = w.norms.empty() ? 0.0 : *std::min_element(w.norms.begin(), w.norms.end());
    w.found = w.min_norm >= threshold;
    if (w.found || w.min_norm > best.min_norm || best.schedule.empty()) best = std::move(w);
  };
  // Amplitude m on support e^{-m^2}.
  {
    NonOcWitness w;
    w.schedule = "m*chi[0,exp(-m^2))";
    bool representable = true;
    for (int m = 1; m <= L; ++m) {
      double len = std::exp(-double(m) * m);
      if (!(len > 0.0) || len > d.horizon) {
        representable = false;
        break;
      }
      w.ladder.push_back(StepFunction::indicator(d, 0.0, len, m));
    }
    if (representable) {
      w.norms = norms_of(P, w.ladder);
      consider(std::move(w));
      if (best.found) return best;
    }
  }
  // theta ln(L0/t) restricted to [0, L0 2^-m) on dyadic shells.
  {
    NonOcWitness w;
    w.schedule = "theta*log-shells(theta=0.25)";
    double L0 = std::min(1.0, half_window(P));
    for (int m = 1; m <= L; ++m) w.ladder.push_back(log_singular(d, 0.25, m, L0));
    w.norms = norms_of(P, w.ladder);
    consider(std::move(w));
  }
  return best;
}

PropertyReport oc_suite(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "oc";
  rep.config = cfg.to_json();
  const bool d2 = delta2_family(P);
  json delta2 = json::array();
  for (const ModularComponent& c : P.family.components) {
    Delta2Result r = delta2_probe(c.phi);
    delta2.push_back({{"phi", c.phi.describe()}, {"holds", r.holds}, {"claimed", r.claimed},
                      {"K", r.K}});
  }
  rep.trials.push_back({{"delta2", delta2}});
  bool ladders_ok = true;
  json bad;
  for (int t = 0; t < cfg.ladders; ++t) {
    StepFunction x = random_target(P, cfg.seed, t);
    for (const Ladder& l : {amplitude_down(x, cfg), support_down(x, cfg)}) {
      std::vector<double> ns = norms_of(P, l.steps);
      bool ok = nonincreasing(ns, cfg.tol_norm) && ns.back() < cfg.tol_convergence;
      rep.trials.push_back({{"trial", t}, {"ladder", l.name}, {"norms", to_array(ns)}, {"ok", ok}});
      if (!ok && ladders_ok) {
        ladders_ok = false;
        bad = {{"x", to_json(x)}, {"ladder", l.name}, {"norms", to_array(ns)}};
      }
    }
  }
  if (d2) {
    rep.property = ladders_ok ? kHolds : kFails;
    rep.verdict = ladders_ok ? Verdict::evidence_only : Verdict::fail;
    if (!ladders_ok) rep.witness = bad;
    rep.summary = ladders_ok ? "Delta_2 family; every down-ladder norm fell below tolerance"
                             : "Delta_2 family but a down-ladder stalled";
    return rep;
  }
  NonOcWitness w = find_non_oc_witness(P, cfg);
  rep.trials.push_back({{"witness_search", w.to_json()}});
  if (w.found) {
    rep.property = kFails;
    rep.verdict = Verdict::evidence_only;
    rep.witness = w.to_json();
    rep.summary = "not Delta_2; dominated null ladder '" + w.schedule + "' keeps norms >= " +
                  std::to_string(w.min_norm);
  } else {
    rep.verdict = all_identity(P) ? Verdict::fail : Verdict::evidence_only;
    rep.summary = "not Delta_2 but no non-OC witness found (best " + std::to_string(w.min_norm) + ")";
    if (rep.verdict == Verdict::fail) rep.witness = w.to_json();
  }
  return rep;
}

SmCertificate counterexample_constructor(const SpacePair& P, const StepFunction& y, double eps) {
  const double a = min_a_param(P);
  if (!(a > 0.0)) {
    throw std::invalid_argument("constructor needs a_phi > 0 for every component");
  }
  const double e = y.support_end();
  const double T = P.family.domain.horizon;
  if (!(e < T)) throw std::invalid_argument("y has full support; no room for the added block");
  NormResult ry = f_norm(P, y);
  if (ry.kase != NormCase::attained) {
    throw std::invalid_argument("constructor needs an attained minimiser for y");
  }
  SmCertificate c{y, y, 0.0, ry.value, 0.0, ry.k0, a * k0_amplitude(P, ry.k0)};
  c.x = add(y, StepFunction::indicator(P.family.domain, e, T, c.amplitude));
  c.norm_x = norm_of(P, c.x);
  c.difference = std::abs(c.norm_x - c.norm_y);
  (void)eps;
  return c;
}

PropertyReport sm_suite(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "sm";
  rep.config = cfg.to_json();
  CrucialReport cr = crucial_probe(P.f, 256, cfg.seed);
  if (!cr.strict_holds) {
    rep.verdict = Verdict::hypothesis_missing;
    rep.witness = {{"f_not_strictly_monotone", {{"u", cr.strict_u}, {"v", cr.strict_v}}}};
    rep.summary = "outer norm is not strictly monotone on the orthant";
    return rep;
  }
  const double eps = 1e-6;
  if (min_a_param(P) == 0.0) {
    int checked = 0;
    rep.verdict = Verdict::pass;
    rep.property = kHolds;
    for (int t = 0; t < cfg.trials; ++t) {
      auto rng = trial_engine(cfg.seed, t);
      StepFunction y = random_target(P, cfg.seed, t + 1);
      std::vector<Piece> ps;
      for (const Piece& p : y.pieces()) {
        if (p.value != 0.0) ps.push_back(p);
      }
      std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ps.size()) - 1));
      double factor = uniform(rng, 0.0, 0.8);
      StepFunction x = subtract(y, StepFunction::indicator(P.family.domain, ps[j].start, ps[j].end,
                                                           ps[j].value * (1.0 - factor)));
      double nx = norm_of(P, x);
      double ny = norm_of(P, y);
      ++checked;
      if (t < 32) rep.trials.push_back({{"trial", t}, {"norm_x", nx}, {"norm_y", ny}});
      if (!(nx < ny - 1e-12 * ny)) {
        rep.verdict = Verdict::fail;
        rep.property = kFails;
        rep.witness = {{"x", to_json(x)}, {"y", to_json(y)}, {"norm_x", nx}, {"norm_y", ny}};
        break;
      }
    }
    rep.summary = "a_phi = 0 for some component; " + std::to_string(checked) +
                  " ordered pairs compared strictly";
    return rep;
  }
  // Every a_phi > 0: the constructor must produce equal norms.
  rep.verdict = Verdict::pass;
  rep.property = kFails;
  double worst = 0.0;
  for (int t = 0; t < std::max(1, cfg.ladders); ++t) {
    StepFunction y = random_target(P, cfg.seed, t);
    SmCertificate c = counterexample_constructor(P, y, eps);
    worst = std::max(worst, c.difference);
    rep.trials.push_back({{"trial", t}, {"norm_x", c.norm_x}, {"norm_y", c.norm_y},
                          {"difference", c.difference}});
    if (t == 0) rep.witness = c.to_json();
    if (c.difference > 2.0 * eps) {
      rep.verdict = Verdict::fail;
      rep.property = "";
      rep.witness = c.to_json();
      break;
    }
  }
  rep.summary = "all a_phi > 0; constructor certificates with norm gap <= " + std::to_string(worst);
  return rep;
}

namespace {

struct UmFailureEvidence {
  bool found = false;
  json record;
};

// ULUM-style construction: Y = (y + k0 z_m) / ||.||, X = k0 z_m / ||.|| with
// 0 <= X <= Y, ||X|| bounded below and ||Y - X|| -> 1.
UmFailureEvidence um_failure_witness(const SpacePair& P, const TrialConfig& cfg) {
  UmFailureEvidence ev;
  NonOcWitness w = find_non_oc_witness(P, cfg);
  if (!w.found) return ev;
  DisjointBase base = disjoint_base(P);
  double amp = k0_amplitude(P, base.k0);
  std::vector<double> gaps, xnorms;
  json last;
  for (const StepFunction& z : w.ladder) {
    StepFunction ym = add(base.y, scale(z, amp));
    double n = norm_of(P, ym);
    double c = std::pow(n, -1.0 / P.family.s);
    StepFunction Y = scale(ym, c);
    StepFunction X = scale(z, amp * c);
    double nd = norm_of(P, subtract(Y, X));
    gaps.push_back(1.0 - nd);
    xnorms.push_back(norm_of(P, X));
    last = {{"Y", to_json(Y)}, {"X", to_json(X)}, {"norm_Y_minus_X", nd}};
  }
  double min_x = *std::min_element(xnorms.begin(), xnorms.end());
  std::size_t half = gaps.size() / 2;
  bool shrinking = nonincreasing({gaps.begin() + half, gaps.end()}, 1e-12) && gaps.back() <= 1e-3;
  ev.found = shrinking && min_x > 0.0;
  ev.record = {{"construction", w.schedule}, {"k0", base.k0}, {"gaps", to_array(gaps)},
               {"x_norms", to_array(xnorms)}, {"eps", min_x}, {"last_pair", last}};
  return ev;
}

// rho(x_m) -> 0 => rho(2 x_m) -> 0 on generated sequences, including a
// log-singular one that separates Delta_2 from non-Delta_2 growth.
bool rho_convergence_evidence(const SpacePair& P, const TrialConfig& cfg, json& out) {
  bool ok = true;
  out = json::array();
  auto run = [&](const std::string& name, const std::vector<StepFunction>& xs) {
    PropertyReport r = rho_sequence_condition(P.family, xs);
    out.push_back({{"sequence", name}, {"verdict", to_string(r.verdict)}});
    if (r.verdict == Verdict::fail) ok = false;
  };
  StepFunction x = random_target(P, cfg.seed, 1);
  run("amplitude-decay", amplitude_down(x, cfg).steps);
  run("support-shrink", support_down(x, cfg).steps);
  std::vector<StepFunction> shells;
  double L0 = std::min(1.0, half_window(P));
  for (int m = 1; m <= cfg.sequence_length; ++m) {
    shells.push_back(log_singular(P.family.domain, 0.75, m, L0));
  }
  run("log-shells(theta=0.75)", shells);
  return ok;
}

}  // namespace

PropertyReport um_suite(const SpacePair& P, const TrialConfig& cfg,
                        const std::vector<double>& eps_grid) {
  PropertyReport rep;
  rep.suite = "um";
  rep.config = cfg.to_json();
  rep.config["eps_grid"] = eps_grid;
  const ModulusTable& tab = monotonicity_modulus(P.f);
  json hyp{{"f_uniformly_monotone", modulus_positive(tab)},
           {"f_claimed", P.f.uniformly_monotone_claimed()},
           {"modulus_resolution", tab.resolution}};
  if (!modulus_positive(tab)) {
    rep.verdict = Verdict::hypothesis_missing;
    rep.witness = {{"delta_f(0.5)", tab.at(0.5)}, {"delta_f(0.9)", tab.at(0.9)}};
    rep.trials.push_back({{"hypotheses", hyp}});
    rep.summary = "outer norm is not uniformly monotone (delta_f vanishes on the grid)";
    return rep;
  }
  bool convex = std::all_of(P.family.components.begin(), P.family.components.end(),
                            [](const ModularComponent& c) { return c.phi.convex(); });
  PropertyReport sup = superadditivity_probe(P.family, 24, cfg.seed);
  hyp["convex"] = convex;
  hyp["superadditive"] = to_string(sup.verdict);
  json rho_ev;
  bool rho_ok = rho_convergence_evidence(P, cfg, rho_ev);
  hyp["rho_convergence"] = rho_ev;
  rep.trials.push_back({{"hypotheses", hyp}});
  if (!convex || sup.verdict != Verdict::pass) {
    rep.verdict = Verdict::hypothesis_missing;
    rep.witness = sup.witness;
    rep.summary = "components are not convex and superadditive";
    return rep;
  }
  if (!rho_ok) {
    // Outside the sufficient condition; for Orlicz families the equivalence predicts a
    // failure of uniform monotonicity, so look for one.
    UmFailureEvidence ev = um_failure_witness(P, cfg);
    if (ev.found) {
      rep.verdict = Verdict::evidence_only;
      rep.property = kFails;
      rep.witness = ev.record;
      rep.summary = "rho fails the sequence condition; pairs with ||X|| >= " +
                    std::to_string(ev.record["eps"].get<double>()) + " and ||Y - X|| -> 1";
    } else {
      rep.verdict = Verdict::hypothesis_missing;
      rep.summary = "rho fails the sequence condition and no failure witness was found";
    }
    return rep;
  }
  const double s = P.family.s;
  const double cs = std::pow(min_basis_value(P.f), 1.0 / s);
  std::vector<double> worst(eps_grid.size(), 0.0);
  std::vector<int> counts(eps_grid.size(), 0);
  rep.verdict = Verdict::evidence_only;
  rep.property = kHolds;
  int skipped = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_engine(cfg.seed, t);
    std::size_t g = static_cast<std::size_t>(t) % eps_grid.size();
    double eps = eps_grid[g];
    StepFunction y = normalized(P, random_target(P, cfg.seed, t));
    StepFunction x(P.family.domain);
    if (t > 0) {
      std::vector<Piece> ps = y.pieces();
      double floor = std::pow(eps, 1.0 / s);
      for (Piece& p : ps) {
        p.value *= uniform(rng, 0.0, 1.0) < 0.25 ? 0.0 : uniform(rng, floor, 1.0);
      }
      x = StepFunction::from_pieces(P.family.domain, ps);
    }
    double nx = norm_of(P, x);
    double nd = norm_of(P, subtract(y, x));
    double r = eval_max(P.family, x, cs);
    double bound = 1.0 - tab.at(r);
    if (nd > bound + cfg.tol_convergence) {
      rep.verdict = Verdict::fail;
      rep.property = kFails;
      rep.witness = {{"x", to_json(x)}, {"y", to_json(y)}, {"norm_y_minus_x", nd},
                     {"rho(cx)", r}, {"bound", bound}};
      break;
    }
    if (t < 32) {
      rep.trials.push_back({{"trial", t}, {"eps", eps}, {"norm_x", nx}, {"norm_y_minus_x", nd},
                            {"bound", bound}});
    }
    if (nx < eps) {
      ++skipped;
      continue;
    }
    worst[g] = std::max(worst[g], nd);
    ++counts[g];
  }
  json modulus = json::array();
  for (std::size_t g = 0; g < eps_grid.size(); ++g) {
    double dh = 1.0 - worst[g];
    modulus.push_back({{"eps", eps_grid[g]}, {"delta_hat", dh}, {"pairs", counts[g]}});
    if (counts[g] > 0 && !(dh > 0.0) && rep.verdict != Verdict::fail) {
      rep.verdict = Verdict::fail;
      rep.property = kFails;
      rep.witness = {{"eps", eps_grid[g]}, {"delta_hat", dh}};
    }
  }
  rep.trials.push_back({{"empirical_modulus", modulus}, {"skipped_pairs", skipped}});
  if (rep.verdict != Verdict::fail) {
    rep.summary = "bound ||y-x|| <= 1 - delta_f(rho(cx)) held on every pair; empirical modulus positive";
  } else if (rep.summary.empty()) {
    rep.summary = "uniform monotonicity bound violated";
  }
  return rep;
}

PropertyReport llum_suite(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "llum";
  rep.config = cfg.to_json();
  if (delta2_family(P)) {
    rep.verdict = Verdict::evidence_only;
    rep.property = kHolds;
    for (int t = 0; t < cfg.ladders; ++t) {
      StepFunction x = random_target(P, cfg.seed, t);
      double nx = norm_of(P, x);
      double e = x.support_end();
      Ladder blend = amplitude_up(x, cfg);
      Ladder mixed{"blend+support-shrink", {}};
      for (int m = 1; m <= cfg.sequence_length; ++m) {
        mixed.steps.push_back(scale(restrict_to(x, e * std::pow(cfg.support_ratio, m), e),
                                    1.0 - std::pow(cfg.amplitude_ratio, m)));
      }
      for (const Ladder& l : {blend, mixed}) {
        std::vector<double> ns = norms_of(P, l.steps);
        std::vector<double> ds;
        for (const StepFunction& xm : l.steps) ds.push_back(norm_of(P, subtract(x, xm)));
        bool premise = std::abs(ns.back() - nx) <= cfg.tol_convergence;
        bool ok = !premise || ds.back() <= cfg.tol_convergence;
        rep.trials.push_back({{"trial", t}, {"ladder", l.name}, {"norm_x", nx},
                              {"norms", to_array(ns)}, {"distances", to_array(ds)}, {"ok", ok}});
        if (!ok && rep.verdict != Verdict::fail) {
          rep.verdict = Verdict::fail;
          rep.property = kFails;
          rep.witness = {{"x", to_json(x)}, {"ladder", l.name}, {"distances", to_array(ds)}};
        }
      }
    }
    rep.summary = "Delta_2 family; ||x - x_m|| -> 0 along every lower ladder";
    return rep;
  }
  // Not Delta_2: x = y + k0 z_1, x_m = y + k0 (z_1 - z_m).
  NonOcWitness w = find_non_oc_witness(P, cfg);
  if (!w.found) {
    rep.verdict = Verdict::evidence_only;
    rep.summary = "not Delta_2 and no null ladder found; no LLUM witness";
    return rep;
  }
  DisjointBase base = disjoint_base(P);
  double amp = k0_amplitude(P, base.k0);
  StepFunction x = add(base.y, scale(w.ladder.front(), amp));
  double nx = norm_of(P, x);
  std::vector<double> gaps, dists;
  for (const StepFunction& z : w.ladder) {
    StepFunction xm = subtract(x, scale(z, amp));
    gaps.push_back(nx - norm_of(P, xm));
    dists.push_back(norm_of(P, subtract(x, xm)));
  }
  double min_dist = *std::min_element(dists.begin(), dists.end());
  std::size_t half = gaps.size() / 2;
  bool premise = nonincreasing({gaps.begin() + half, gaps.end()}, 1e-12) &&
                 gaps.back() <= 1e-3 * std::max(1.0, nx);
  rep.trials.push_back({{"norm_x", nx}, {"norm_gaps", to_array(gaps)}, {"distances", to_array(dists)}});
  if (premise && min_dist > 0.0) {
    rep.verdict = Verdict::evidence_only;
    rep.property = kFails;
    rep.witness = {{"x", to_json(x)}, {"construction", w.schedule}, {"k0", base.k0},
                   {"norm_gaps", to_array(gaps)}, {"min_distance", min_dist}};
    rep.summary = "x_m <= x with ||x_m|| -> ||x|| but ||x - x_m|| >= " + std::to_string(min_dist);
  } else {
    rep.verdict = Verdict::evidence_only;
    rep.summary = "LLUM witness construction inconclusive";
  }
  return rep;
}

PropertyReport ulum_oc_link_probe(const SpacePair& P, const TrialConfig& cfg, double eps_request) {
  if (delta2_family(P)) {
    throw std::invalid_argument("no non-OC witness: every Orlicz function satisfies Delta_2");
  }
  NonOcWitness w = find_non_oc_witness(P, cfg, eps_request);
  if (!w.found) {
    throw std::invalid_argument("requested eps " + std::to_string(eps_request) +
                                " exceeds the best achievable " + std::to_string(w.min_norm));
  }
  PropertyReport rep;
  rep.suite = "ulum";
  rep.config = cfg.to_json();
  rep.config["eps_request"] = eps_request;
  DisjointBase base = disjoint_base(P);
  double amp = k0_amplitude(P, base.k0);
  double ny = norm_of(P, base.y);
  std::vector<double> norms, dists;
  for (const StepFunction& z : w.ladder) {
    StepFunction ym = add(base.y, scale(z, amp));
    norms.push_back(norm_of(P, ym));
    dists.push_back(norm_of(P, subtract(ym, base.y)));
  }
  double min_dist = *std::min_element(dists.begin(), dists.end());
  std::vector<double> excess;
  for (double n : norms) excess.push_back(n - ny);
  std::size_t half = excess.size() / 2;
  bool converging = nonincreasing({excess.begin() + half, excess.end()}, 1e-12) &&
                    excess.back() <= 1e-3;
  double floor = base.k0 * eps_request;
  rep.trials.push_back({{"norm_y", ny}, {"norms", to_array(norms)}, {"distances", to_array(dists)}});
  if (converging && min_dist >= floor * (1.0 - 1e-9)) {
    rep.verdict = Verdict::evidence_only;
    rep.property = kFails;
    rep.witness = {{"y", to_json(base.y)}, {"k0", base.k0}, {"construction", w.schedule},
                   {"z_last", to_json(w.ladder.back())}, {"norms", to_array(norms)},
                   {"min_distance", min_dist}};
    rep.summary = "||y_m|| -> ||y|| = 1 while ||y_m - y|| >= " + std::to_string(min_dist);
  } else {
    rep.verdict = Verdict::evidence_only;
    rep.summary = "ULUM certificate inconclusive";
  }
  return rep;
}

namespace {

// Upper ladders x <= x_m with ||x_m|| -> ||x||; checks ||x_m - x|| -> 0.
bool ulum_positive_ladders(const SpacePair& P, const TrialConfig& cfg, json& out) {
  bool ok = true;
  out = json::array();
  const MeasureDomain& d = P.family.domain;
  double h = half_window(P);
  for (int t = 0; t < cfg.ladders; ++t) {
    StepFunction x = random_target(P, cfg.seed, t);
    double nx = norm_of(P, x);
    StepFunction w = StepFunction::indicator(d, h, d.horizon, 0.5);
    std::vector<double> ds;
    for (int m = 1; m <= cfg.sequence_length; ++m) {
      StepFunction xm = add(x, scale(w, std::pow(cfg.amplitude_ratio, m)));
      xm = add(xm, StepFunction::indicator(d, 0.0, h * std::pow(cfg.support_ratio, m), 0.5));
      ds.push_back(norm_of(P, subtract(xm, x)));
    }
    bool good = ds.back() <= cfg.tol_convergence;
    ok = ok && good;
    out.push_back({{"trial", t}, {"norm_x", nx}, {"distances", to_array(ds)}, {"ok", good}});
  }
  return ok;
}

}  // namespace

PropertyReport measure_convergence_probe(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "measure";
  rep.config = cfg.to_json();
  if (!(min_a_param(P) == 0.0) || !f_uniformly_monotone(P)) {
    rep.verdict = Verdict::hypothesis_missing;
    rep.summary = "needs a_phi = 0 for some component and a uniformly monotone outer norm";
    return rep;
  }
  rep.verdict = Verdict::evidence_only;
  rep.property = kHolds;
  const std::vector<double> levels{0.01, 0.1};
  for (int t = 0; t < cfg.ladders; ++t) {
    StepFunction x = random_target(P, cfg.seed, t);
    double nx = norm_of(P, x);
    for (const Ladder& l : {amplitude_up(x, cfg), truncation_up(x, cfg)}) {
      std::vector<double> ns = norms_of(P, l.steps);
      json meas = json::array();
      bool ok = true;
      for (double eps : levels) {
        std::vector<double> mu;
        for (const StepFunction& xm : l.steps) mu.push_back(distribution(subtract(x, xm), eps));
        meas.push_back({{"eps", eps}, {"measures", to_array(mu)}});
        if (std::abs(ns.back() - nx) <= cfg.tol_convergence && mu.back() > cfg.tol_convergence) ok = false;
      }
      rep.trials.push_back({{"trial", t}, {"ladder", l.name}, {"norms", to_array(ns)},
                            {"deviation_measures", meas}, {"ok", ok}});
      if (!ok && rep.verdict != Verdict::fail) {
        rep.verdict = Verdict::fail;
        rep.property = kFails;
        rep.witness = {{"x", to_json(x)}, {"ladder", l.name}};
      }
    }
    // Fixed-measure deficit: the norms must stay apart.
    auto ps = x.pieces();
    auto it = std::find_if(ps.begin(), ps.end(), [](const Piece& p) { return p.value >= 0.1; });
    if (it != ps.end()) {
      StepFunction xm = subtract(x, StepFunction::indicator(P.family.domain, it->start,
                                                            0.5 * (it->start + it->end), 0.1));
      double gap = nx - norm_of(P, xm);
      bool apart = gap > cfg.tol_convergence;
      rep.trials.push_back({{"trial", t}, {"ladder", "fixed-deficit"}, {"norm_gap", gap},
                            {"measure", distribution(subtract(x, xm), 0.05)}, {"ok", apart}});
      if (!apart && rep.verdict != Verdict::fail) {
        rep.verdict = Verdict::fail;
        rep.property = kFails;
        rep.witness = {{"x", to_json(x)}, {"x_m", to_json(xm)}, {"norm_gap", gap}};
      }
    }
  }
  rep.summary = "deviation sets shrink to measure 0 along norm-convergent lower ladders";
  return rep;
}

PropertyReport seven_way_dashboard(const SpacePair& P, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.suite = "dashboard";
  rep.config = cfg.to_json();
  const bool d2 = delta2_family(P);
  std::vector<std::pair<std::string, std::string>> cols;
  std::vector<PropertyReport> parts;
  cols.emplace_back("delta2", d2 ? kHolds : kFails);

  PropertyReport oc = oc_suite(P, cfg);
  cols.emplace_back("oc", oc.property.empty() ? "n/a" : oc.property);
  parts.push_back(oc);

  PropertyReport um = um_suite(P, cfg);
  cols.emplace_back("um", um.verdict == Verdict::hypothesis_missing || um.property.empty()
                              ? "n/a"
                              : um.property);
  parts.push_back(um);

  std::string ulum = "n/a";
  if (d2) {
    json ev;
    ulum = ulum_positive_ladders(P, cfg, ev) ? kHolds : kFails;
    rep.trials.push_back({{"ulum_ladders", ev}});
  } else {
    try {
      PropertyReport u = ulum_oc_link_probe(P, cfg);
      if (!u.property.empty()) ulum = u.property;
      parts.push_back(u);
    } catch (const std::invalid_argument& e) {
      rep.trials.push_back({{"ulum", e.what()}});
    }
  }
  PropertyReport llum = llum_suite(P, cfg);
  std::string llum_col = llum.property.empty() ? "n/a" : llum.property;
  parts.push_back(llum);
  // DUM and IUM enter through their equivalence with LLUM and ULUM.
  cols.emplace_back("ulum", ulum);
  cols.emplace_back("dum", llum_col);
  cols.emplace_back("llum", llum_col);
  cols.emplace_back("ium", ulum);

  json row = json::object();
  for (const auto& [k, v] : cols) row[k] = v;
  json sub = json::array();
  for (const PropertyReport& r : parts) {
    sub.push_back({{"suite", r.suite}, {"verdict", to_string(r.verdict)}, {"property", r.property},
                   {"summary", r.summary}});
  }
  rep.trials.push_back({{"row", row}, {"suites", sub}});

  const std::pair<std::string, std::string>* anchor = nullptr;
  for (const auto& c : cols) {
    if (c.second == "n/a") continue;
    if (!anchor) {
      anchor = &c;
    } else if (c.second != anchor->second) {
      rep.verdict = Verdict::fail;
      rep.witness = {{"conflict", {anchor->first, c.first}}, {"row", row}};
      rep.summary = "conflict between " + anchor->first + " and " + c.first;
      return rep;
    }
  }
  for (const PropertyReport& r : parts) {
    if (r.verdict == Verdict::fail) {
      rep.verdict = Verdict::fail;
      rep.witness = {{"failed_suite", r.suite}, {"detail", r.witness}, {"row", row}};
      rep.summary = r.suite + " contradicted its prediction";
      return rep;
    }
  }
  rep.verdict = Verdict::pass;
  rep.property = d2 ? kHolds : kFails;
  rep.summary = d2 ? "all-pass row" : "coherent witness row";
  rep.witness = nullptr;
  if (!d2) rep.witness = {{"row", row}};
  return rep;
}

std::vector<NamedSpace> builtin_space_matrix() {
  const MeasureDomain d = MeasureDomain::with_horizon(2.0);
  std::vector<NamedSpace> out;
  auto outer = [](const std::string& name) {
    if (name == "l1") return OuterNorm::l1(2);
    if (name == "l2") return OuterNorm::lp(2, 2.0);
    return OuterNorm::max(2);
  };
  for (double p : {1.5, 2.0, 3.0}) {
    for (const char* f : {"l1", "l2", "max"}) {
      for (Operator op : {Operator::identity, Operator::cesaro}) {
        std::string pname = p == 1.5 ? "1.5" : std::to_string(static_cast<int>(p));
        out.push_back({"power" + pname + "-" + f + "-" + to_string(op),
                       {outer(f), SemimodularFamily::single(OrliczFunction::power(p), d, op)}});
      }
    }
  }
  for (const char* f : {"l1", "l2", "max"}) {
    out.push_back({std::string("exp-") + f + "-identity",
                   {outer(f), SemimodularFamily::single(OrliczFunction::exp_minus_one(), d)}});
  }
  SemimodularFamily mixed;
  mixed.domain = d;
  mixed.components = {ModularComponent::unweighted(OrliczFunction::power(2.0), d),
                      ModularComponent::unweighted(OrliczFunction::exp_minus_one(), d)};
  out.push_back({"power2+exp-l1-identity", {OuterNorm::l1(3), mixed}});
  return out;
}

TrialConfig matrix_config(std::uint64_t seed) {
  TrialConfig c;
  c.seed = seed;
  c.trials = 40;
  c.ladders = 2;
  return c;
}

}  // namespace fnorm
