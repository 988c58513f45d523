#include "fnorm/outer_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "fnorm/random.hpp"

namespace fnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scaled_lp(std::span<const double> a, double p) {
  double m = 0.0;
  for (double x : a) m = std::max(m, x);
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  if (p == 2.0) {
    for (double x : a) {
      double r = x / m;
      sum += r * r;
    }
    return m * std::sqrt(sum);
  }
  for (double x : a) sum += std::pow(x / m, p);
  return m * std::pow(sum, 1.0 / p);
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double radical_inverse(int index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

std::vector<double> halton_point(int index, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = radical_inverse(index, kPrimes[i % 16]);
  return v;
}

// Nonzero points of {0,1}^n.
std::vector<std::vector<double>> corner_points(int n) {
  std::vector<std::vector<double>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    out.push_back(std::move(v));
  }
  return out;
}

// Advances a base-(r+1) counter; false once it wraps to zero.
bool next_lattice(std::vector<int>& c, int r) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (++c[i] <= r) return true;
    c[i] = 0;
  }
  return false;
}

}  // namespace

OuterNorm OuterNorm::max(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  OuterNorm f;
  f.tag_ = Tag::max;
  f.n_ = n;
  f.p_ = kInf;
  return f;
}

OuterNorm OuterNorm::l1(int n) {
  OuterNorm f = max(n);
  f.tag_ = Tag::l1;
  f.p_ = 1.0;
  return f;
}

OuterNorm OuterNorm::lp(int n, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp requires p >= 1");
  if (p == 1.0) return l1(n);
  if (std::isinf(p)) return max(n);
  OuterNorm f = max(n);
  f.tag_ = Tag::lp;
  f.p_ = p;
  return f;
}

OuterNorm OuterNorm::weighted_lp(double p, std::vector<double> weights) {
  if (!(p >= 1.0)) throw std::invalid_argument("weighted_lp requires p >= 1");
  if (weights.empty()) throw std::invalid_argument("weighted_lp needs weights");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
  }
  OuterNorm f;
  f.tag_ = Tag::weighted_lp;
  f.n_ = static_cast<int>(weights.size());
  f.p_ = p;
  f.w_ = std::move(weights);
  return f;
}

OuterNorm OuterNorm::a_norm(int n) {
  OuterNorm f = max(n);
  f.tag_ = Tag::a_norm;
  f.p_ = 0.0;
  return f;
}

double OuterNorm::operator()(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != n_) {
    throw DimensionMismatch("outer norm of dimension " + std::to_string(n_) +
                            " applied to vector of length " + std::to_string(v.size()));
  }
  for (double x : v) {
    if (!std::isfinite(x)) return kInf;
  }
  switch (tag_) {
    case Tag::max: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
    case Tag::l1: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
    case Tag::lp: {
      std::vector<double> a(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
      return scaled_lp(a, p_);
    }
    case Tag::weighted_lp: {
      std::vector<double> a(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) a[i] = w_[i] * std::abs(v[i]);
      if (std::isinf(p_)) return *std::max_element(a.begin(), a.end());
      if (p_ == 1.0) {
        double s = 0.0;
        for (double x : a) s += x;
        return s;
      }
      return scaled_lp(a, p_);
    }
    case Tag::a_norm: {
      double m = 0.0;
      for (std::size_t i = 1; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
      return std::abs(v[0]) + m;
    }
  }
  return kInf;
}

bool OuterNorm::uniformly_monotone_claimed() const {
  switch (tag_) {
    case Tag::l1:
    case Tag::lp:
      return true;
    case Tag::weighted_lp:
      return std::isfinite(p_);
    case Tag::a_norm:
      // For n = 2 the A-norm is l1.
      return n_ == 2;
    case Tag::max:
      return false;
  }
  return false;
}

bool OuterNorm::symmetric_pair() const {
  if (n_ != 2) return false;
  if (tag_ == Tag::weighted_lp) return w_[0] == w_[1];
  return true;
}

std::string OuterNorm::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (tag_) {
    case Tag::max:
      os << "max";
      break;
    case Tag::l1:
      os << "l1";
      break;
    case Tag::lp:
      os << "l" << p_;
      break;
    case Tag::weighted_lp:
      os << "weighted_l" << p_ << "(";
      for (std::size_t i = 0; i < w_.size(); ++i) os << (i ? "," : "") << w_[i];
      os << ")";
      break;
    case Tag::a_norm:
      os << "a_norm";
      break;
  }
  os << "[n=" << n_ << "]";
  return os.str();
}

double min_basis_value(const OuterNorm& f) {
  double m = kInf;
  std::vector<double> e(f.dimension(), 0.0);
  for (int i = 0; i < f.dimension(); ++i) {
    e[i] = 1.0;
    m = std::min(m, f(e));
    e[i] = 0.0;
  }
  return m;
}

std::optional<OuterNorm> dual(const OuterNorm& f) {
  using Tag = OuterNorm::Tag;
  switch (f.tag()) {
    case Tag::max:
      return OuterNorm::l1(f.dimension());
    case Tag::l1:
      return OuterNorm::max(f.dimension());
    case Tag::lp:
      return OuterNorm::lp(f.dimension(), conjugate_exponent(f.p()));
    case Tag::weighted_lp: {
      std::vector<double> w;
      for (double x : f.weights()) w.push_back(1.0 / x);
      return OuterNorm::weighted_lp(conjugate_exponent(f.p()), std::move(w));
    }
    case Tag::a_norm:
      if (f.dimension() == 2) return OuterNorm::max(2);
      return std::nullopt;
  }
  return std::nullopt;
}

double dual_norm(const OuterNorm& f, std::span<const double> v) {
  if (static_cast<int>(v.size()) != f.dimension()) {
    throw DimensionMismatch("dual norm dimension mismatch");
  }
  if (auto g = dual(f)) return (*g)(v);
  // A-norm: an l1 sum of |x_1| and the sup norm of the rest, so the dual is
  // the max of |y_1| and the l1 norm of the rest.
  double tail = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) tail += std::abs(v[i]);
  return std::max(std::abs(v[0]), tail);
}

double dual_norm(const OuterNorm& f, std::initializer_list<double> v) {
  return dual_norm(f, std::span<const double>(v.begin(), v.size()));
}

double dual_norm_numeric(const OuterNorm& f, std::span<const double> v, int samples) {
  const int n = f.dimension();
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  auto ratio = [&](const std::vector<double>& u) {
    double fu = f(u);
    if (!(fu > 0.0)) return 0.0;
    double dot = 0.0;
    for (int i = 0; i < n; ++i) dot += a[i] * u[i];
    return dot / fu;
  };
  std::vector<double> best_u(n, 1.0);
  double best = ratio(best_u);
  auto consider = [&](const std::vector<double>& u) {
    double r = ratio(u);
    if (r > best) {
      best = r;
      best_u = u;
    }
  };
  for (const auto& c : corner_points(n)) consider(c);
  for (int k = 1; k <= samples; ++k) consider(halton_point(k, n));
  // Coordinate refinement with shrinking steps.
  for (double step = 0.1; step > 1e-10; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int i = 0; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> u = best_u;
          u[i] = std::max(0.0, u[i] + sgn * step);
          double r = ratio(u);
          if (r > best * (1.0 + 1e-15)) {
            best = r;
            best_u = u;
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

EquivalenceConstants equivalence_constants(const OuterNorm& f, const OuterNorm& g, int samples) {
  if (f.dimension() != g.dimension()) throw DimensionMismatch("equivalence of different dimensions");
  EquivalenceConstants r{kInf, 0.0, 0};
  auto take = [&](const std::vector<double>& v) {
    double fv = f(v);
    if (!(fv > 0.0)) return;
    double q = g(v) / fv;
    r.m = std::min(r.m, q);
    r.M = std::max(r.M, q);
    ++r.points;
  };
  for (const auto& c : corner_points(f.dimension())) take(c);
  for (int k = 1; k <= samples; ++k) take(halton_point(k, f.dimension()));
  return r;
}

double ModulusTable::at(double e) const {
  if (eps.empty()) return 0.0;
  if (e <= eps.front()) return delta.front();
  auto it = std::upper_bound(eps.begin(), eps.end(), e);
  return delta[static_cast<std::size_t>(it - eps.begin()) - 1];
}

int default_modulus_resolution(int n) {
  if (n <= 2) return 64;
  if (n == 3) return 16;
  return 8;
}

namespace {

ModulusTable compute_modulus(const OuterNorm& f, int r, int steps) {
  const int n = f.dimension();
  std::vector<double> best(steps + 1, kInf);
  long long pairs = 0;
  std::vector<int> vc(n, 0);
  std::vector<double> v(n), u(n), d(n);
  const double slack = 1.0 / r;
  while (next_lattice(vc, r)) {
    for (int i = 0; i < n; ++i) v[i] = vc[i];
    double fv = f(v);
    for (int i = 0; i < n; ++i) v[i] /= fv;
    std::vector<int> sc(n, 0);
    do {
      for (int i = 0; i < n; ++i) {
        u[i] = v[i] * sc[i] / r;
        d[i] = v[i] - u[i];
      }
      double fu = f(u);
      double gap = 1.0 - f(d);
      double reach = (fu + slack) * steps;
      int k = reach >= steps ? steps : static_cast<int>(std::floor(reach));
      if (gap < best[k]) best[k] = gap;
      ++pairs;
    } while (next_lattice(sc, r));
  }
  ModulusTable t;
  t.resolution = r;
  t.pairs = pairs;
  t.eps.resize(steps + 1);
  t.delta.resize(steps + 1);
  double running = kInf;
  for (int i = steps; i >= 0; --i) {
    running = std::min(running, best[i]);
    t.eps[i] = double(i) / steps;
    if (std::isinf(running)) {
      t.delta[i] = 1.0;
      t.any_empty = true;
    } else {
      t.delta[i] = std::max(running, 0.0);
    }
  }
  return t;
}

}  // namespace

const ModulusTable& monotonicity_modulus(const OuterNorm& f, int resolution, int eps_steps) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<ModulusTable>> cache;
  if (resolution <= 0) resolution = default_modulus_resolution(f.dimension());
  std::string key = f.describe() + "/" + std::to_string(resolution) + "/" + std::to_string(eps_steps);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto t = std::make_unique<ModulusTable>(compute_modulus(f, resolution, eps_steps));
    it = cache.emplace(key, std::move(t)).first;
  }
  return *it->second;
}

bool modulus_positive(const ModulusTable& table) {
  for (int k = 1; k <= 9; ++k) {
    if (!(table.at(k / 10.0) > 0.0)) return false;
  }
  return true;
}

CrucialReport crucial_probe(const OuterNorm& f, int trials, std::uint64_t seed) {
  const int n = f.dimension();
  CrucialReport rep;
  rep.trials = trials;
  auto check_strict = [&](const std::vector<double>& u, const std::vector<double>& v) {
    if (!rep.strict_holds) return;
    if (!(f(u) < f(v))) {
      rep.strict_holds = false;
      rep.strict_u = u;
      rep.strict_v = v;
    }
  };
  auto check_crucial = [&](const std::vector<double>& x, const std::vector<double>& y) {
    if (!rep.crucial_holds) return;
    double fy = f(y);
    if (f(x) > fy + 1e-12 * std::max(1.0, fy)) {
      rep.crucial_holds = false;
      rep.crucial_x = x;
      rep.crucial_y = y;
    }
  };
  // Deterministic candidates: unit drops from the all-ones vector, then the
  // {0,1,2}^n lattice.
  std::vector<double> ones(n, 1.0);
  for (int j = 0; j < n; ++j) {
    std::vector<double> u = ones;
    u[j] = 0.0;
    check_strict(u, ones);
    if (j > 0) check_crucial(u, ones);
  }
  std::vector<int> c(n, 0);
  while (next_lattice(c, 2)) {
    std::vector<double> v(c.begin(), c.end());
    for (int j = 0; j < n; ++j) {
      if (c[j] == 0) continue;
      std::vector<double> u = v;
      u[j] -= 1.0;
      check_strict(u, v);
      if (j > 0 && c[0] == 1) check_crucial(u, v);
    }
  }
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_engine(seed, static_cast<std::uint64_t>(t));
    std::vector<double> x(n), y(n), u(n), v(n);
    x[0] = y[0] = 1.0;
    for (int i = 1; i < n; ++i) {
      x[i] = uniform(rng, 0.0, 3.0);
      y[i] = x[i] + (uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : uniform(rng, 0.0, 1.0));
    }
    check_crucial(x, y);
    bool differs = false;
    for (int i = 0; i < n; ++i) {
      v[i] = uniform(rng, 0.0, 2.0);
      double s = uniform(rng, 0.0, 1.0) < 0.3 ? 1.0 : uniform(rng, 0.0, 1.0);
      u[i] = v[i] * s;
      differs = differs || u[i] != v[i];
    }
    if (differs) check_strict(u, v);
  }
  return rep;
}

}  // namespace fnorm
