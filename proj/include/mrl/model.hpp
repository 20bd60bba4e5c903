#pragma once

/**
 * Catalog of hazard-specified lifetime distributions.
 *
 * Every model exposes its failure rate r(t) in closed form and, through jet
 * arithmetic, exact derivatives of r and of the reciprocal rate s = 1/r.
 * Models additionally declare whichever closed forms they have: the
 * cumulative hazard R(t), the mean residual life m(t), an analytic envelope
 * for sup |s'| beyond a point, and a positive hazard floor usable for
 * certified tail truncation.
 *
 * Models are immutable value objects; all operations are pure.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mrl/jet.hpp"

namespace mrl {

/// Requested closed form is not declared by the model.
class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ExponentialParams {
  double rate;  // r(t) = rate
};

struct WeibullParams {
  double shape;  // r(t) = (shape/scale) * (t/scale)^(shape-1)
  double scale;
};

struct FracLinearParams {
  double c, d;  // r(t) = 1/(c + d t), requires c > 0, 0 <= d < 1
};

struct LinearMrlParams {
  double a, b;  // m(t) = a + b t, r(t) = (1+b)/(a + b t)
};

struct OscillatingParams {
  double a, b, c, d;  // m(t) = (a + b sin t^2)/(c + d t); a > b, d > 2b, c^2 > (a+b)d
};

using ModelParams = std::variant<ExponentialParams, WeibullParams, FracLinearParams,
                                 LinearMrlParams, OscillatingParams>;

class HazardModel {
 public:
  explicit HazardModel(ModelParams params);

  /// Family name: exponential, weibull, fraclinear, linearmrl, oscillating.
  const std::string& name() const { return name_; }

  /// Canonical spec string, `name:key=value,...`.
  std::string spec() const;

  const ModelParams& params() const { return params_; }

  /// Failure rate r(t).  Requires t >= 0 (and t > 0 where the closed form is
  /// unbounded at the origin, e.g. weibull with shape < 1).
  double hazard(double t) const;

  /// Jet of r at t.
  Jet hazard_jet(double t, int order) const;

  /// Jet of s = 1/r at t, built from the closed-form r via jet reciprocal.
  /// Throws std::domain_error when r(t) = 0.
  Jet reciprocal_hazard_jet(double t, int order) const;

  bool has_closed_form_mrl() const;
  /// Closed-form m(t); throws unsupported_error when not declared.
  double mrl_closed_form(double t) const;

  bool has_closed_form_cumulative_hazard() const;
  /// Closed-form R(t); throws unsupported_error when not declared.
  double cumulative_hazard_closed_form(double t) const;

  /// Analytic value of sup_{x>t} |s'(x)| where the family admits one.
  std::optional<double> sprime_sup_analytic(double t) const;

  /// Largest certified r_min with r(x) >= r_min for all x >= t0, if the
  /// family admits a positive floor.  For the oscillating family this is the
  /// minimum over [t0, inf) of the positivity envelope
  ///   ((d-2b) d u^2 + 2c (d-b) u + c^2 - (a+b) d) / ((a+b)(c+du)).
  std::optional<double> hazard_floor(double t0) const;

 private:
  void validate() const;

  std::string name_;
  ModelParams params_;
};

/// Parses `name:key=value,key=value,...` (exact grammar: no spaces, lowercase
/// names) and validates parameter constraints.  Throws std::invalid_argument
/// naming the violated constraint.
HazardModel parse_model(std::string_view spec);

/// Default parameter set per family, used by `--model all` surfaces.
std::vector<HazardModel> default_catalog();

}  // namespace mrl
