#pragma once

// Exact calculus for piecewise-constant functions on [0, alpha).
//
// The interval [0, 1) is the unit domain. The half line [0, inf) is modelled
// by a finite horizon T: every function vanishes identically on [T, inf), so
// integrals stay finite and x^(r)(inf) = 0 holds automatically.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnorm {

class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MeasureDomain {
  enum class Kind { unit, horizon };

  Kind kind = Kind::unit;
  double horizon = 1.0;

  static MeasureDomain unit() { return {}; }
  static MeasureDomain with_horizon(double T);

  bool operator==(const MeasureDomain&) const = default;
};

std::string to_string(const MeasureDomain& d);

struct Piece {
  double start;
  double end;
  double value;

  bool operator==(const Piece&) const = default;
};

/// Piecewise-constant function in canonical form: breakpoints 0 = t0 < ... < tm,
/// value v_j on [t_{j-1}, t_j), zero on [tm, alpha). Adjacent pieces carry
/// distinct values and the last piece is nonzero; m = 0 is the zero function.
class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(MeasureDomain domain) : domain_(domain) {}

  /// Pieces must be disjoint, ascending and inside [0, horizon]; gaps are zero.
  static StepFunction from_pieces(MeasureDomain domain, std::span<const Piece> pieces);
  static StepFunction from_breaks(MeasureDomain domain, std::vector<double> breaks,
                                  std::vector<double> values);
  static StepFunction indicator(MeasureDomain domain, double a, double b, double value = 1.0);
  static StepFunction constant(MeasureDomain domain, double value);

  const MeasureDomain& domain() const { return domain_; }
  std::span<const double> breakpoints() const { return breaks_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool is_zero() const { return values_.empty(); }
  double support_end() const { return breaks_.empty() ? 0.0 : breaks_.back(); }
  double sup_abs() const;
  bool is_nonnegative() const;

  double operator()(double t) const;
  std::vector<Piece> pieces() const;

  bool operator==(const StepFunction&) const = default;

 private:
  void canonicalize();

  MeasureDomain domain_;
  std::vector<double> breaks_;
  std::vector<double> values_;
};

// Lattice operations. Both operands must live on the same domain.
StepFunction add(const StepFunction& x, const StepFunction& y);
StepFunction subtract(const StepFunction& x, const StepFunction& y);
StepFunction multiply(const StepFunction& x, const StepFunction& y);
StepFunction pointwise_min(const StepFunction& x, const StepFunction& y);
StepFunction pointwise_max(const StepFunction& x, const StepFunction& y);
StepFunction absolute(const StepFunction& x);
StepFunction scale(const StepFunction& x, double lambda);
/// x restricted to [a, b), zero elsewhere.
StepFunction restrict_to(const StepFunction& x, double a, double b);

inline StepFunction operator+(const StepFunction& x, const StepFunction& y) { return add(x, y); }
inline StepFunction operator-(const StepFunction& x, const StepFunction& y) { return subtract(x, y); }
inline StepFunction operator*(double lambda, const StepFunction& x) { return scale(x, lambda); }

/// Pointwise |x| <= |y| on the merged partition.
bool dominated_by(const StepFunction& x, const StepFunction& y);

/// Sum of v_j (t_j - t_{j-1}), accumulated left to right.
double integrate(const StepFunction& x);

/// d_x(lambda) = mu{ t : |x(t)| > lambda }.
double distribution(const StepFunction& x, double lambda);

/// Pieces of |x| sorted by value (descending, stable) and packed from 0.
StepFunction decreasing_rearrangement(const StepFunction& x);

/// Same distribution function, compared exactly.
bool equimeasurable(const StepFunction& x, const StepFunction& y);

/// One piece of a curve on [start, end): constant a, affine a + b t, or
/// hyperbolic a + b / t.
struct CurvePiece {
  enum class Shape { constant, affine, hyperbolic };

  double start;
  double end;
  Shape shape;
  double a;
  double b;

  double operator()(double t) const;
  double sup() const;
};

/// Evaluable piecewise curve on (0, horizon]. Produced by the running averages
/// (Cesaro transform, maximal function), which are hyperbolic-affine per piece.
class PiecewiseCurve {
 public:
  PiecewiseCurve(double horizon, std::vector<CurvePiece> pieces, CurvePiece tail);

  double horizon() const { return horizon_; }
  std::span<const CurvePiece> pieces() const { return pieces_; }
  const CurvePiece& tail() const { return tail_; }

  double operator()(double t) const;

  /// Pieces clipped to (0, horizon], tail included.
  std::vector<CurvePiece> segments() const;

 private:
  double horizon_;
  std::vector<CurvePiece> pieces_;
  CurvePiece tail_;
};

/// C(x)(t) = (1/t) int_0^t |x(s)| ds.
PiecewiseCurve cesaro_transform(const StepFunction& x);

/// x**(t) = (1/t) int_0^t x^(r)(s) ds.
PiecewiseCurve maximal_function(const StepFunction& x);

}  // namespace fnorm
