#pragma once

/**
 * Brute-force numerical ground truth for hazard-specified models: cumulative
 * hazard, survival, and the mean residual life
 *
 *   m(t) = integral_t^inf exp(-(R(u) - R(t))) du
 *
 * by adaptive Simpson quadrature over geometrically expanding panels, plus
 * grid diagnostics for the limiting behaviour of r(t) m(t).
 *
 * The improper upper limit is truncated at a point u* where a certified tail
 * bound drops below tol * value.  Exponentially-integrable closed-form tails
 * (exponential, fraclinear, linearmrl) are added exactly; models carrying
 * only a hazard floor (weibull, oscillating) account the bound as error.
 * Survival ratios are always formed from differences R(u) - R(t), never from
 * separate exponentials, so large t cannot overflow.
 */

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mrl/model.hpp"

namespace mrl {

/// Adaptive quadrature could not certify the requested tolerance.
class quadrature_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadResult {
  double value = 0;
  double abs_error_estimate = 0;
  long evaluations = 0;
  double truncation_point = 0;  // where the improper tail was cut
};

/// Tuning knobs for the improper-integral driver.  Defaults suit every
/// catalog model; tests shrink max_panels to exercise failure paths.
struct QuadOptions {
  double tol = 1e-9;    // relative error target
  int max_panels = 64;  // geometric panel cap for the improper upper limit
  int max_depth = 48;   // adaptive bisection depth per panel
};

/// R(t) = integral_0^t r.  Uses the model's closed form when declared, else
/// adaptive Simpson with absolute error target tol.
QuadResult cumulative_hazard(const HazardModel& model, double t, double tol);

/// Survival exp(-R(t)), in [0, 1].
double survival(const HazardModel& model, double t, double tol);

/// Mean residual life by adaptive quadrature; abs_error_estimate is at most
/// 2 * tol * value on success.
QuadResult mrl_quadrature(const HazardModel& model, double t, double tol);
QuadResult mrl_quadrature(const HazardModel& model, double t, const QuadOptions& options);

/// Residual of the identity m'(t) = r(t) m(t) - 1 with m' estimated by a
/// central difference of the quadrature m.  Requires t > h > 0.
double de1_residual(const HazardModel& model, double t, double h, double tol);

/// Default finite-difference step used by the verification surfaces.
inline double de1_default_step(double t) { return 1e-4 * (t > 1 ? t : 1.0); }

/// Grid estimates of the limit quantities over a window.  inf/sup of r*m and
/// of m are taken over [T, 2T]; alpha_hat/beta_hat (inf/sup of r) and
/// lambda_hat (sup of |s'|) over a log-spaced grid on [T, 10T].  For the
/// oscillating family the window grid additionally clusters points at the
/// local phase scale (step <= pi/(8t)) so extremes of cos(t^2) are not
/// aliased away.
struct LimitDiagnostics {
  double window_lo = 0, window_hi = 0;
  double inf_rm = 0, sup_rm = 0;  // extremes of r(t) m(t) on the window
  double inf_m = 0, sup_m = 0;    // extremes of m on the window
  double alpha_hat = 0;           // grid inf of r beyond T
  double beta_hat = 0;            // grid sup of r beyond T
  double lambda_hat = 0;          // grid sup of |s'| beyond T
  std::optional<double> sprime_limit_bound;  // 1/(1 - s'(T)) when defined
  int failed_points = 0;          // window points whose quadrature failed
};

LimitDiagnostics limit_diagnostics(const HazardModel& model, double T, int grid_points);

/// True iff s(T) exp(-R(T)) decreases along T_list and ends below tol.
/// Compared in log space, so deep tails do not underflow.
bool hyp1_check(const HazardModel& model, std::span<const double> T_list, double tol);

}  // namespace mrl
