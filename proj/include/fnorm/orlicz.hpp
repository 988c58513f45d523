#pragma once

// Closed catalog of Orlicz functions with exact structural parameters.

#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace fnorm {

class NonConvexFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OrliczFunction {
 public:
  enum class Tag { power, flat_power, capped, exp_minus_one, s_composed };

  /// |u|^p, p >= 1.
  static OrliczFunction power(double p);
  /// max(|u| - a, 0)^p, a > 0, p >= 1.
  static OrliczFunction flat_power(double a, double p);
  /// |u|^p for |u| <= b, +inf beyond.
  static OrliczFunction capped(double b, double p);
  /// e^|u| - 1.
  static OrliczFunction exp_minus_one();
  /// g(|u|^s), s in (0, 1].
  static OrliczFunction s_composed(const OrliczFunction& base, double s);

  Tag tag() const { return tag_; }
  double p() const { return p_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double s() const { return s_; }
  const OrliczFunction* base() const { return base_.get(); }

  double operator()(double u) const;

  /// sup{t > 0 : phi(t) = 0}.
  double a_param() const;
  /// sup{t > 0 : phi(t) < inf}.
  double b_param() const;

  /// Convex in the ordinary sense (s_composed with s < 1 generally is not).
  bool convex() const;

  bool delta2_claimed() const { return delta2_claimed_; }
  bool n_function_claimed() const { return n_function_claimed_; }
  /// Copy with overridden declared flags.
  OrliczFunction with_claims(bool delta2, bool n_function) const;

  std::string describe() const;

 private:
  OrliczFunction() = default;
  void set_default_claims();

  Tag tag_ = Tag::power;
  double p_ = 1.0;
  double a_ = 0.0;
  double b_ = 0.0;
  double s_ = 1.0;
  std::shared_ptr<const OrliczFunction> base_;
  bool delta2_claimed_ = false;
  bool n_function_claimed_ = false;
};

struct OrliczParams {
  double a_param;
  double b_param;
};

OrliczParams params(const OrliczFunction& phi);

/// psi_Y(u) = sup_{v > 0} (|u| v - phi(v)). Throws NonConvexFunction for
/// non-convex phi.
double young_conjugate(const OrliczFunction& phi, double u);

/// The numeric route, exposed so closed forms can be cross-checked.
double young_conjugate_numeric(const OrliczFunction& phi, double u);

struct Delta2Result {
  bool holds;
  double K;          // sup of phi(2u)/phi(u) over the grid points seen
  double fails_at;   // first u whose ratio exceeds K_cap (NaN when holds)
  bool claimed;      // declared flag, reported alongside, never overridden
};

/// Log-spaced grid u in [1e-8, u_max]; ratio phi(2u)/phi(u) with the
/// convention 0/0 = 1, c/0 = inf.
Delta2Result delta2_probe(const OrliczFunction& phi, double u_max = 50.0, double K_cap = 1e6,
                          int points = 2000);

struct GrowthEvidence {
  std::vector<double> u;
  std::vector<double> ratio;  // phi(u) / u
  bool monotone_growth;       // ratio nondecreasing and last >= 10 * first
};

/// Evidence (not a certificate) for phi(u)/u -> inf as u -> inf.
GrowthEvidence superlinear_growth_probe(const OrliczFunction& phi, double u_max = 1e6,
                                        int points = 60);

}  // namespace fnorm
