#pragma once

// Outer norms f on R^n that glue the component modulars together.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnorm {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OuterNorm {
 public:
  enum class Tag { max, l1, lp, weighted_lp, a_norm };

  static OuterNorm max(int n);
  static OuterNorm l1(int n);
  /// p in [1, inf]; p = 1 and p = inf collapse to l1 and max.
  static OuterNorm lp(int n, double p);
  /// (sum (w_i |x_i|)^p)^(1/p), or max_i w_i |x_i| when p = inf.
  static OuterNorm weighted_lp(double p, std::vector<double> weights);
  /// |x_1| + max_{i >= 2} |x_i|.
  static OuterNorm a_norm(int n);

  Tag tag() const { return tag_; }
  int dimension() const { return n_; }
  double p() const { return p_; }
  const std::vector<double>& weights() const { return w_; }

  /// Non-finite coordinates give +inf.
  double operator()(std::span<const double> v) const;
  double operator()(std::initializer_list<double> v) const {
    return (*this)(std::span<const double>(v.begin(), v.size()));
  }

  /// Catalog knowledge; cross-checked by the modulus probe.
  bool uniformly_monotone_claimed() const;
  bool strictly_monotone_claimed() const { return uniformly_monotone_claimed(); }
  /// f(1, u) = f(u, 1) for n = 2.
  bool symmetric_pair() const;

  std::string describe() const;
  bool operator==(const OuterNorm&) const = default;

 private:
  Tag tag_ = Tag::max;
  int n_ = 2;
  double p_ = 0.0;
  std::vector<double> w_;
};

/// min_i f(e_i).
double min_basis_value(const OuterNorm& f);

/// Closed-form dual norm as a catalog member, when one exists.
std::optional<OuterNorm> dual(const OuterNorm& f);

/// Dual norm value sup{<v, u> : f(u) <= 1}; closed form for every tag.
double dual_norm(const OuterNorm& f, std::span<const double> v);
double dual_norm(const OuterNorm& f, std::initializer_list<double> v);

/// Brute-force sup over quasi-random orthant directions, refined by local
/// perturbation, used to cross-check the closed forms.
double dual_norm_numeric(const OuterNorm& f, std::span<const double> v, int samples = 20000);

struct EquivalenceConstants {
  double m;
  double M;
  int points;
};

/// Empirical m, M with m f <= g <= M f on Halton directions plus the
/// 2^n - 1 corner points of {0,1}^n.
EquivalenceConstants equivalence_constants(const OuterNorm& f, const OuterNorm& g,
                                           int samples = 4096);

struct ModulusTable {
  std::vector<double> eps;
  std::vector<double> delta;
  int resolution = 0;
  long long pairs = 0;
  bool any_empty = false;  // some eps had no admissible pair (delta reported as 1)

  /// Lower envelope at eps: value at the largest grid point <= eps.
  double at(double e) const;
};

/// Grid brute force of delta_f(eps) = inf{1 - f(v - u) : 0 <= u <= v, f(v) = 1,
/// f(u) >= eps}. v ranges over the normalised {0..r}^n lattice, u = s o v with
/// s in {0..r}^n / r. A pair counts for eps when f(u) >= eps - 1/r, which keeps
/// the estimate below the true modulus on the sampled directions. The table is
/// nondecreasing in eps. Results are cached per (f, resolution).
const ModulusTable& monotonicity_modulus(const OuterNorm& f, int resolution = 0,
                                         int eps_steps = 256);

int default_modulus_resolution(int n);

/// delta_f(eps) > 0 at eps = 0.1, ..., 0.9.
bool modulus_positive(const ModulusTable& table);

struct CrucialReport {
  bool crucial_holds = true;
  std::vector<double> crucial_x, crucial_y;
  bool strict_holds = true;
  std::vector<double> strict_u, strict_v;
  int trials = 0;
};

/// Checks f(x) <= f(y) for x <= y with first coordinate 1, and strict
/// monotonicity f(u) < f(v) for 0 <= u <= v, u != v. Deterministic lattice
/// candidates run before the random trials.
CrucialReport crucial_probe(const OuterNorm& f, int trials, std::uint64_t seed);

}  // namespace fnorm
