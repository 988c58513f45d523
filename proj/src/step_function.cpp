#include "fnorm/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fnorm {

namespace {

void require_same_domain(const StepFunction& x, const StepFunction& y) {
  if (!(x.domain() == y.domain())) {
    throw DomainMismatch("operands live on different domains: " + to_string(x.domain()) +
                         " vs " + to_string(y.domain()));
  }
}

// Union of the breakpoints of x and y, sorted and deduplicated.
std::vector<double> merged_breaks(const StepFunction& x, const StepFunction& y) {
  std::vector<double> out;
  auto bx = x.breakpoints();
  auto by = y.breakpoints();
  out.reserve(bx.size() + by.size() + 1);
  std::merge(bx.begin(), bx.end(), by.begin(), by.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty() || out.front() != 0.0) out.insert(out.begin(), 0.0);
  return out;
}

template <class Op>
StepFunction combine(const StepFunction& x, const StepFunction& y, Op op) {
  require_same_domain(x, y);
  std::vector<double> breaks = merged_breaks(x, y);
  if (breaks.size() < 2) return StepFunction(x.domain());
  std::vector<double> values;
  values.reserve(breaks.size() - 1);
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    double mid = breaks[j - 1];
    values.push_back(op(x(mid), y(mid)));
  }
  return StepFunction::from_breaks(x.domain(), std::move(breaks), std::move(values));
}

}  // namespace

MeasureDomain MeasureDomain::with_horizon(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
  return {Kind::horizon, T};
}

std::string to_string(const MeasureDomain& d) {
  std::ostringstream os;
  if (d.kind == MeasureDomain::Kind::unit) {
    os << "unit";
  } else {
    os << "horizon(" << d.horizon << ")";
  }
  return os.str();
}

StepFunction StepFunction::from_breaks(MeasureDomain domain, std::vector<double> breaks,
                                       std::vector<double> values) {
  if (domain.kind == MeasureDomain::Kind::unit && domain.horizon != 1.0) {
    throw std::invalid_argument("unit domain must have horizon 1");
  }
  if (values.empty()) {
    if (breaks.size() > 1) throw std::invalid_argument("breakpoints without values");
    return StepFunction(domain);
  }
  if (breaks.size() != values.size() + 1) {
    throw std::invalid_argument("need exactly one more breakpoint than values");
  }
  if (breaks.front() != 0.0) throw std::invalid_argument("first breakpoint must be 0");
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    if (!(breaks[j] >= breaks[j - 1])) {
      throw std::invalid_argument("breakpoints must be nondecreasing");
    }
  }
  if (breaks.back() > domain.horizon) {
    throw std::invalid_argument("breakpoint beyond domain horizon");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("step values must be finite");
  }
  StepFunction out(domain);
  out.breaks_ = std::move(breaks);
  out.values_ = std::move(values);
  out.canonicalize();
  return out;
}

StepFunction StepFunction::from_pieces(MeasureDomain domain, std::span<const Piece> pieces) {
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  double cursor = 0.0;
  for (const Piece& p : pieces) {
    if (!(p.start >= 0.0) || !(p.end > p.start)) {
      throw std::invalid_argument("piece must satisfy 0 <= start < end");
    }
    if (p.start < cursor) throw std::invalid_argument("pieces must be disjoint and ascending");
    if (p.start > cursor) {
      breaks.push_back(p.start);
      values.push_back(0.0);
    }
    breaks.push_back(p.end);
    values.push_back(p.value);
    cursor = p.end;
  }
  return from_breaks(domain, std::move(breaks), std::move(values));
}

StepFunction StepFunction::indicator(MeasureDomain domain, double a, double b, double value) {
  Piece p{a, b, value};
  return from_pieces(domain, std::span<const Piece>(&p, 1));
}

StepFunction StepFunction::constant(MeasureDomain domain, double value) {
  return indicator(domain, 0.0, domain.horizon, value);
}

void StepFunction::canonicalize() {
  std::vector<double> b{0.0};
  std::vector<double> v;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    double lo = breaks_[j];
    double hi = breaks_[j + 1];
    if (hi <= lo) continue;
    double val = values_[j] == 0.0 ? 0.0 : values_[j];  // folds -0.0
    if (!v.empty() && v.back() == val) {
      b.back() = hi;
    } else {
      b.push_back(hi);
      v.push_back(val);
    }
  }
  while (!v.empty() && v.back() == 0.0) {
    v.pop_back();
    b.pop_back();
  }
  if (v.empty()) b.clear();
  breaks_ = std::move(b);
  values_ = std::move(v);
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool StepFunction::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double StepFunction::operator()(double t) const {
  if (values_.empty() || t < 0.0 || t >= breaks_.back()) return 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

std::vector<Piece> StepFunction::pieces() const {
  std::vector<Piece> out;
  out.reserve(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) {
    out.push_back({breaks_[j], breaks_[j + 1], values_[j]});
  }
  return out;
}

StepFunction add(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return a + b; });
}

StepFunction subtract(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return a - b; });
}

StepFunction multiply(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return a * b; });
}

StepFunction pointwise_min(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return std::min(a, b); });
}

StepFunction pointwise_max(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return std::max(a, b); });
}

StepFunction absolute(const StepFunction& x) {
  auto b = x.breakpoints();
  std::vector<double> values;
  for (double v : x.values()) values.push_back(std::abs(v));
  return StepFunction::from_breaks(x.domain(), {b.begin(), b.end()}, std::move(values));
}

StepFunction scale(const StepFunction& x, double lambda) {
  auto b = x.breakpoints();
  std::vector<double> values;
  for (double v : x.values()) values.push_back(lambda * v);
  return StepFunction::from_breaks(x.domain(), {b.begin(), b.end()}, std::move(values));
}

StepFunction restrict_to(const StepFunction& x, double a, double b) {
  if (!(a < b)) return StepFunction(x.domain());
  b = std::min(b, x.domain().horizon);
  return multiply(x, StepFunction::indicator(x.domain(), std::max(a, 0.0), b));
}

bool dominated_by(const StepFunction& x, const StepFunction& y) {
  require_same_domain(x, y);
  std::vector<double> breaks = merged_breaks(x, y);
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    if (std::abs(x(breaks[j])) > std::abs(y(breaks[j]))) return false;
  }
  return true;
}

double integrate(const StepFunction& x) {
  auto b = x.breakpoints();
  auto v = x.values();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) sum += v[j] * (b[j + 1] - b[j]);
  return sum;
}

double distribution(const StepFunction& x, double lambda) {
  auto b = x.breakpoints();
  auto v = x.values();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (std::abs(v[j]) > lambda) sum += b[j + 1] - b[j];
  }
  return sum;
}

StepFunction decreasing_rearrangement(const StepFunction& x) {
  std::vector<Piece> ps = x.pieces();
  for (Piece& p : ps) p.value = std::abs(p.value);
  std::stable_sort(ps.begin(), ps.end(),
                   [](const Piece& a, const Piece& b) { return a.value > b.value; });
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  double cursor = 0.0;
  for (const Piece& p : ps) {
    if (p.value == 0.0) break;
    cursor += p.end - p.start;
    breaks.push_back(cursor);
    values.push_back(p.value);
  }
  // Packed lengths can round past the horizon by an ulp.
  if (!values.empty()) breaks.back() = std::min(breaks.back(), x.domain().horizon);
  return StepFunction::from_breaks(x.domain(), std::move(breaks), std::move(values));
}

namespace {

// Sorted (|value|, total measure) pairs over the nonzero level sets.
std::vector<std::pair<double, double>> level_measures(const StepFunction& x) {
  std::vector<std::pair<double, double>> lv;
  for (const Piece& p : x.pieces()) {
    double v = std::abs(p.value);
    if (v != 0.0) lv.emplace_back(v, p.end - p.start);
  }
  std::stable_sort(lv.begin(), lv.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, double>> out;
  for (const auto& [v, m] : lv) {
    if (!out.empty() && out.back().first == v) {
      out.back().second += m;
    } else {
      out.emplace_back(v, m);
    }
  }
  return out;
}

}  // namespace

bool equimeasurable(const StepFunction& x, const StepFunction& y) {
  return level_measures(x) == level_measures(y);
}

double CurvePiece::operator()(double t) const {
  switch (shape) {
    case Shape::constant:
      return a;
    case Shape::affine:
      return a + b * t;
    case Shape::hyperbolic:
      return a + b / t;
  }
  return a;
}

double CurvePiece::sup() const {
  switch (shape) {
    case Shape::constant:
      return a;
    case Shape::affine:
      return std::max(a + b * start, a + b * end);
    case Shape::hyperbolic:
      if (b > 0.0) {
        return start > 0.0 ? a + b / start : std::numeric_limits<double>::infinity();
      }
      return a + b / end;
  }
  return a;
}

PiecewiseCurve::PiecewiseCurve(double horizon, std::vector<CurvePiece> pieces, CurvePiece tail)
    : horizon_(horizon), pieces_(std::move(pieces)), tail_(tail) {}

double PiecewiseCurve::operator()(double t) const {
  if (pieces_.empty()) return tail_(t);
  if (t <= 0.0) {
    const CurvePiece& p = pieces_.front();
    return p.shape == CurvePiece::Shape::constant ? p.a : p(std::numeric_limits<double>::min());
  }
  if (t >= pieces_.back().end) return tail_(t);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double v, const CurvePiece& p) { return v < p.end; });
  return (*it)(t);
}

std::vector<CurvePiece> PiecewiseCurve::segments() const {
  std::vector<CurvePiece> out;
  for (const CurvePiece& p : pieces_) {
    if (p.start >= horizon_) break;
    CurvePiece q = p;
    q.end = std::min(q.end, horizon_);
    out.push_back(q);
  }
  if (tail_.start < horizon_) {
    CurvePiece q = tail_;
    q.end = horizon_;
    out.push_back(q);
  }
  return out;
}

namespace {

PiecewiseCurve running_average(const StepFunction& y) {
  // y is nonnegative. On [t_{j-1}, t_j) the average is v + (F_{j-1} - v t_{j-1}) / t.
  std::vector<CurvePiece> pieces;
  auto b = y.breakpoints();
  auto v = y.values();
  double F = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    double lo = b[j];
    double hi = b[j + 1];
    double c = F - v[j] * lo;
    if (j == 0 || c == 0.0) {
      pieces.push_back({lo, hi, CurvePiece::Shape::constant, v[j], 0.0});
    } else {
      pieces.push_back({lo, hi, CurvePiece::Shape::hyperbolic, v[j], c});
    }
    F += v[j] * (hi - lo);
  }
  double tail_start = y.support_end();
  double T = y.domain().horizon;
  CurvePiece tail = F == 0.0
                        ? CurvePiece{tail_start, T, CurvePiece::Shape::constant, 0.0, 0.0}
                        : CurvePiece{tail_start, T, CurvePiece::Shape::hyperbolic, 0.0, F};
  return PiecewiseCurve(T, std::move(pieces), tail);
}

}  // namespace

PiecewiseCurve cesaro_transform(const StepFunction& x) {
  return running_average(absolute(x));
}

PiecewiseCurve maximal_function(const StepFunction& x) {
  return running_average(decreasing_rearrangement(x));
}

}  // namespace fnorm
