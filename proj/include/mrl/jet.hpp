#pragma once

/**
 * Truncated Taylor-series (jet) arithmetic.
 *
 * A Jet carries the coefficients a_k = f^(k)(t0)/k! of a scalar function f
 * expanded at a point t0, up to a fixed order N.  Arithmetic on jets
 * propagates coefficients by the usual truncated power-series rules, so the
 * result of composing +, *, reciprocal, sin/cos, exp and pow on jets is the
 * jet of the composed function, exact up to roundoff for the surviving
 * coefficients.
 *
 * Coefficients are stored in the normalized form f^(k)/k! rather than as raw
 * derivatives; Cauchy products then need no binomial weights and orders up to
 * ~20 stay far from overflow.  Operations between jets of different orders
 * truncate to the shorter operand.
 *
 * Jets are immutable values; all operations are pure functions.
 */

#include <cstddef>
#include <utility>
#include <vector>

namespace mrl {

class Jet {
 public:
  /// Jet with given center and normalized coefficients a_k = f^(k)/k!.
  /// Throws std::domain_error if any coefficient is not finite.
  Jet(double center, std::vector<double> coeffs);

  /// Jet of the identity function t -> t at t0: [t0, 1, 0, ..., 0].
  static Jet variable(double t0, int order);

  /// Jet of a constant function at the given center: [c, 0, ..., 0].
  static Jet constant(double c, int order, double center = 0.0);

  double center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Normalized coefficient a_k (zero beyond the stored order).
  double coeff(int k) const;
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Function value f(t0) = a_0.
  double value() const { return coeffs_[0]; }

  /// Derivative value f^(k)(t0) = k! * a_k.  Requires 0 <= k <= order.
  double derivative(int k) const;

  /// Copy truncated to a lower order.  Requires 0 <= new_order <= order.
  Jet truncated(int new_order) const;

 private:
  double center_;
  std::vector<double> coeffs_;
};

// Sum and product of the underlying functions, truncated to the shorter
// operand.  Both operands must share the same center.
Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);

// Scalar convenience overloads (scalars act as constant functions).
Jet operator+(const Jet& a, double c);
Jet operator+(double c, const Jet& a);
Jet operator-(double c, const Jet& a);
Jet operator*(const Jet& a, double c);
Jet operator*(double c, const Jet& a);

/// Jet of 1/f.  Throws std::domain_error when f(t0) = 0 (the series has a
/// pole there and no reciprocal jet exists).
Jet reciprocal(const Jet& a);

/// Jets of sin(f) and cos(f), propagated by the coupled recurrences
/// (sin f)' = f'·cos f, (cos f)' = -f'·sin f.
std::pair<Jet, Jet> sin_cos(const Jet& a);

/// Jet of exp(f).
Jet exp(const Jet& a);

/// Jet of f^p.  Integer p is handled by repeated multiplication (any f(t0));
/// fractional p requires f(t0) > 0 and throws std::domain_error otherwise.
Jet pow(const Jet& a, double p);

/// Jet of f' at the same center, order reduced by one.  Throws
/// std::invalid_argument on an order-0 jet (no derivative information left).
Jet derivative(const Jet& a);

}  // namespace mrl
