#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "mrl/expansion.hpp"
#include "mrl/oracle.hpp"

namespace mrl::verify {

namespace {

struct Reporter {
  int failures = 0;

  void check(bool ok, const std::string& label, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    if (!ok) ++failures;
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void run_limits(const HazardModel& model, bool full, Reporter& rep) {
  const std::string label = model.spec() + " limits";
  double T = full ? 200.0 : 50.0;
  double tol_mult = full ? 1.0 : 2.0;

  LimitDiagnostics diag = limit_diagnostics(model, T, 128);
  rep.check(diag.failed_points == 0, label,
            "all window quadratures succeeded (failed=" + std::to_string(diag.failed_points) + ")");

  // ess-style sandwich on m: 1/beta <= inf m <= sup m <= 1/alpha (+2% grid slack)
  double slack_m = 0.02 * tol_mult;
  rep.check(1 / diag.beta_hat <= diag.inf_m * (1 + slack_m) &&
                diag.sup_m <= (1 / diag.alpha_hat) * (1 + slack_m),
            label,
            "1/beta=" + num(1 / diag.beta_hat) + " <= m in [" + num(diag.inf_m) + ", " +
                num(diag.sup_m) + "] <= 1/alpha=" + num(1 / diag.alpha_hat));

  // |s'| sandwich on r m where the sup estimate is below one
  if (diag.lambda_hat < 1) {
    double slack = 0.01 * tol_mult;
    double lo = 1 / (1 + diag.lambda_hat), hi = 1 / (1 - diag.lambda_hat);
    rep.check(diag.inf_rm >= lo * (1 - slack) && diag.sup_rm <= hi * (1 + slack), label,
              "r*m in [" + num(diag.inf_rm) + ", " + num(diag.sup_rm) + "] within [" + num(lo) +
                  ", " + num(hi) + "] (lambda=" + num(diag.lambda_hat) + ")");

    // limit of r m against 1/(1 - s'(T)) where that limit exists
    if (diag.sprime_limit_bound) {
      double bound = *diag.sprime_limit_bound;
      double mid = 0.5 * (diag.inf_rm + diag.sup_rm);
      rep.check(std::abs(mid - bound) <= 0.01 * tol_mult * std::abs(bound), label,
                "r*m ~= " + num(mid) + " matches 1/(1-s') = " + num(bound));
    }
  } else if (const auto* osc = std::get_if<OscillatingParams>(&model.params())) {
    // the product oscillates forever between 1 -+ 2b/d
    double lo = 1 - 2 * osc->b / osc->d, hi = 1 + 2 * osc->b / osc->d;
    double slack = 0.05 * tol_mult;
    rep.check(std::abs(diag.inf_rm - lo) <= slack * lo && std::abs(diag.sup_rm - hi) <= slack * hi,
              label,
              "r*m band [" + num(diag.inf_rm) + ", " + num(diag.sup_rm) + "] vs limits [" +
                  num(lo) + ", " + num(hi) + "]");
  } else {
    rep.check(diag.inf_rm < 1 && diag.sup_rm > 1, label,
              "r*m oscillates around 1: [" + num(diag.inf_rm) + ", " + num(diag.sup_rm) + "]");
  }

  double t_list[] = {10.0, 100.0, 1000.0};
  rep.check(hyp1_check(model, t_list, 1e-3 * tol_mult), label,
            "s(T)exp(-R(T)) decays below " + num(1e-3 * tol_mult) + " along T=10,100,1000");
}

void run_expansion(const HazardModel& model, bool full, Reporter& rep) {
  const std::string label = model.spec() + " expansion";
  double agree_tol = full ? 1e-9 : 2e-9;

  bool agree = true;
  double worst = 0;
  for (double t : {1.0, 2.0, 5.0, 10.0}) {
    ThetaSequence seq = theta_terms(model, t, 5);
    for (int k = 0; k <= 5; ++k) {
      double via = theta_via_coefficients(model, t, k);
      double err = std::abs(seq.terms[k] - via) / std::max(1.0, std::abs(seq.terms[k]));
      worst = std::max(worst, err);
      agree = agree && err <= agree_tol;
    }
  }
  rep.check(agree, label, "operator vs coefficient-table terms agree (worst rel " + num(worst) + ")");

  bool decays = true;
  auto near = theta_terms(model, 100.0, 4);
  auto far = theta_terms(model, 1000.0, 4);
  bool applies = model.name() == "linearmrl" || model.name() == "fraclinear";
  if (const auto* weib = std::get_if<WeibullParams>(&model.params())) {
    applies = weib->shape > 1;
  }
  if (applies) {
    for (int k = 0; k <= 3; ++k) {
      if (near.terms[k] == 0.0 && far.terms[k] == 0.0) continue;
      double ratio_near = std::abs(near.terms[k + 1] / near.terms[k]);
      double ratio_far = std::abs(far.terms[k + 1] / far.terms[k]);
      decays = decays && ratio_far <= ratio_near * (1 + 1e-9);
    }
    rep.check(decays, label, "term ratios shrink from t=100 to t=1000");
  }

  if (const auto* frac = std::get_if<FracLinearParams>(&model.params())) {
    bool exact = true;
    for (double t : {0.0, 5.0}) {
      double s = frac->c + frac->d * t;
      ThetaSequence seq = theta_terms(model, t, 8);
      for (int n = 0; n <= 8; ++n) {
        double expected = s * std::pow(frac->d, n + 1) / (1 - frac->d);
        double actual = model.mrl_closed_form(t) - seq.partial_sums[n];
        exact = exact && std::abs(actual - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
      }
    }
    rep.check(exact, label, "truncation error equals the geometric remainder s d^(n+1)/(1-d)");
  }
}

void run_de1(const HazardModel& model, bool full, Reporter& rep) {
  const std::string label = model.spec() + " de1";
  double threshold = (full ? 1.0 : 2.0) * 1e-4;
  for (double t : {2.0, 10.0}) {
    double h = de1_default_step(t);
    double residual = de1_residual(model, t, h, 1e-8);
    rep.check(residual <= threshold, label,
              "|m' - (r m - 1)| = " + num(residual) + " <= " + num(threshold) + " at t=" + num(t));
  }
}

void run_tables(Reporter& rep) {
  const std::string label = "coefficient tables";
  bool ok = true;
  ok = ok && c_polynomial_text(0) == "1";
  ok = ok && c_polynomial_text(1) == "0";
  ok = ok && c_polynomial_text(2) == "-r'";
  ok = ok && c_polynomial_text(3) == "-r''";
  ok = ok && c_polynomial_text(4) == "3*(r')^2 - r'''";
  ok = ok && c_polynomial_text(5) == "10*r'*r'' - r''''";
  rep.check(ok, label, "c_0..c_5 match the closed forms");

  bool mass_ok = true;
  for (int k = 0; k <= 8; ++k) {
    std::int64_t mass = 0;
    for (const auto& [key, coeff] : theta_coefficients(k).coefficients) mass += coeff;
    mass_ok = mass_ok && mass == factorial(k);
  }
  rep.check(mass_ok, label, "multi-index tables carry total mass k! for k <= 8");
}

}  // namespace

int run(const Options& options) {
  Reporter rep;
  bool limits = options.suite == "limits" || options.suite == "all";
  bool expansion = options.suite == "expansion" || options.suite == "all";
  bool de1 = options.suite == "de1" || options.suite == "all";

  if (expansion) run_tables(rep);
  for (const HazardModel& model : options.models) {
    if (limits) run_limits(model, options.full, rep);
    if (expansion) run_expansion(model, options.full, rep);
    if (de1) run_de1(model, options.full, rep);
  }
  std::printf("%s: %d assertion(s) failed\n", rep.failures == 0 ? "OK" : "FAILED", rep.failures);
  return rep.failures;
}

}  // namespace mrl::verify
