#include "mrl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace mrl {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SimpsonEstimate {
  double value = 0;
  double error = 0;
};

// Classic adaptive Simpson with Richardson acceptance |S_fine - S_coarse|/15.
template <typename F>
SimpsonEstimate adaptive_simpson(const F& f, double a, double fa, double m, double fm, double b,
                                 double fb, double tol, int depth, long& evals) {
  if (depth <= 0) {
    throw quadrature_error("interval subdivision overflow on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  double q1 = 0.5 * (a + m), q3 = 0.5 * (m + b);
  double fq1 = f(q1), fq3 = f(q3);
  evals += 2;
  double h = b - a;
  double coarse = h / 6 * (fa + 4 * fm + fb);
  double left = h / 12 * (fa + 4 * fq1 + fm);
  double right = h / 12 * (fm + 4 * fq3 + fb);
  double fine = left + right;
  double err = (fine - coarse) / 15;
  // stop at the rounding floor: below it bisection only shuffles noise
  double noise = 8 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (std::abs(err) <= std::max(tol, noise)) {
    return {fine + err, std::abs(err)};
  }
  SimpsonEstimate l = adaptive_simpson(f, a, fa, q1, fq1, m, fm, tol / 2, depth - 1, evals);
  SimpsonEstimate r = adaptive_simpson(f, m, fm, q3, fq3, b, fb, tol / 2, depth - 1, evals);
  return {l.value + r.value, l.error + r.error};
}

template <typename F>
SimpsonEstimate integrate(const F& f, double a, double b, double tol, int depth, long& evals) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  evals += 3;
  return adaptive_simpson(f, a, fa, m, fm, b, fb, tol, depth, evals);
}

// Simultaneous advance of H(u) = integral r and the discounted mass
// integral exp(-H(u)) du on a shared adaptive mesh, for models without a
// closed-form cumulative hazard.  The right half always starts from the left
// half's refined H, so the discount never drifts.
struct CoupledEstimate {
  double mass = 0;
  double dH = 0;
  double mass_error = 0;
  double H_error = 0;
};

double simpson3(double fa, double fm, double fb, double h) { return h / 6 * (fa + 4 * fm + fb); }

template <typename F>
CoupledEstimate coupled_segment(const F& r, double a, double ra, double m, double rm, double b,
                                double rb, double H_a, double tol_mass, double tol_H, int depth,
                                long& evals) {
  if (depth <= 0) {
    throw quadrature_error("interval subdivision overflow on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  double q1 = 0.5 * (a + m), q3 = 0.5 * (m + b);
  double rq1 = r(q1), rq3 = r(q3);
  double e1 = 0.5 * (a + q1), e5 = 0.5 * (m + q3);
  double re1 = r(e1), re5 = r(e5);
  evals += 4;

  double S_ab = simpson3(ra, rm, rb, b - a);
  double S_am = simpson3(ra, rq1, rm, m - a);
  double S_mb = simpson3(rm, rq3, rb, b - m);
  double errH = std::abs(S_am + S_mb - S_ab) / 15;

  double H_m = H_a + S_am;
  double H_b = H_m + S_mb;
  double H_q1 = H_a + simpson3(ra, re1, rq1, q1 - a);
  double H_q3 = H_m + simpson3(rm, re5, rq3, q3 - m);
  double pa = std::exp(-H_a), pm = std::exp(-H_m), pb = std::exp(-H_b);
  double M_ab = simpson3(pa, pm, pb, b - a);
  double M_am = simpson3(pa, std::exp(-H_q1), pm, m - a);
  double M_mb = simpson3(pm, std::exp(-H_q3), pb, b - m);
  double errM = std::abs(M_am + M_mb - M_ab) / 15;

  if (errH <= tol_H && errM <= tol_mass) {
    return {M_am + M_mb + (M_am + M_mb - M_ab) / 15, S_am + S_mb, errM, errH};
  }
  CoupledEstimate left =
      coupled_segment(r, a, ra, q1, rq1, m, rm, H_a, tol_mass / 2, tol_H / 2, depth - 1, evals);
  CoupledEstimate right = coupled_segment(r, m, rm, q3, rq3, b, rb, H_a + left.dH, tol_mass / 2,
                                          tol_H / 2, depth - 1, evals);
  return {left.mass + right.mass, left.dH + right.dH, left.mass_error + right.mass_error,
          left.H_error + right.H_error};
}

// Rough decay scale of the survival ratio, used to size the first panel.
double initial_scale(const HazardModel& model, double t) {
  for (double probe : {t, t + 1.0, t + 0.001 * (1 + t), t + 10.0}) {
    try {
      double r = model.hazard(probe);
      if (std::isfinite(r) && r > 0) return std::clamp(1.0 / r, 1e-6, 1e6);
    } catch (const std::domain_error&) {
      continue;
    }
  }
  return 1.0;
}

struct TailInfo {
  bool known = false;
  bool exact = false;
  double amount = 0;  // exact tail value, or a certified upper bound
};

// Tail of the discounted survival integral past u*, either exact (the
// antiderivative of exp(-R) is elementary) or a certified upper bound from a
// hazard floor: integral_{u*}^inf exp(-H) <= exp(-H(u*)) / r_min.
TailInfo tail_past(const HazardModel& model, double u_star, double H_star) {
  double discount = std::exp(-H_star);
  struct Visitor {
    const HazardModel& model;
    double u_star, discount;
    TailInfo operator()(const ExponentialParams& q) const {
      return {true, true, discount / q.rate};
    }
    TailInfo operator()(const FracLinearParams& q) const {
      return {true, true, discount * (q.c + q.d * u_star) / (1 - q.d)};
    }
    TailInfo operator()(const LinearMrlParams& q) const {
      return {true, true, discount * (q.a + q.b * u_star)};
    }
    TailInfo operator()(const WeibullParams& q) const {
      double r = model.hazard(u_star);
      if (r <= 0) return {};
      if (q.shape >= 1) return {true, false, discount / r};
      // shape < 1: r decays, so pad the floor bound by the standard
      // incomplete-gamma factor 1/(1 - (1/shape - 1)/z), valid once
      // z = (u*/scale)^shape exceeds 1/shape - 1.
      double z = std::pow(u_star / q.scale, q.shape);
      double excess = 1 / q.shape - 1;
      if (z <= excess) return {};
      return {true, false, discount / r / (1 - excess / z)};
    }
    TailInfo operator()(const OscillatingParams&) const {
      auto floor = model.hazard_floor(u_star);
      if (!floor) return {};
      return {true, false, discount / *floor};
    }
  };
  return std::visit(Visitor{model, u_star, discount}, model.params());
}

}  // namespace

QuadResult cumulative_hazard(const HazardModel& model, double t, double tol) {
  if (!(t >= 0)) throw std::invalid_argument("time must be non-negative");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (model.has_closed_form_cumulative_hazard()) {
    double value = model.cumulative_hazard_closed_form(t);
    return {value, 4 * std::numeric_limits<double>::epsilon() * std::abs(value), 1, t};
  }
  if (t == 0) return {0.0, 0.0, 1, 0.0};
  long evals = 0;
  auto r = [&](double x) { return model.hazard(x); };
  SimpsonEstimate est = integrate(r, 0.0, t, tol, 60, evals);
  return {est.value, est.error, evals, t};
}

double survival(const HazardModel& model, double t, double tol) {
  double R = cumulative_hazard(model, t, tol).value;
  return std::min(1.0, std::exp(-R));
}

QuadResult mrl_quadrature(const HazardModel& model, double t, double tol) {
  return mrl_quadrature(model, t, QuadOptions{.tol = tol});
}

QuadResult mrl_quadrature(const HazardModel& model, double t, const QuadOptions& options) {
  if (!(t >= 0)) throw std::invalid_argument("time must be non-negative");
  if (!(options.tol > 0)) throw std::invalid_argument("tolerance must be positive");
  double tol = options.tol;
  double scale = initial_scale(model, t);
  bool closed_R = model.has_closed_form_cumulative_hazard();
  double R_t = closed_R ? model.cumulative_hazard_closed_form(t) : 0.0;

  QuadResult result;
  long evals = 0;
  double H_left = 0;  // R(left) - R(t)
  double H_error = 0;
  double left = t;
  double stop_discount = std::min(tol, 1e-9);  // for exact-tail models

  for (int panel = 0; panel < options.max_panels; ++panel) {
    double width = scale * std::pow(2.0, panel);
    double right = left + width;
    double ref = std::max(result.value, scale);
    // budget split: half to the mass quadrature, half (coupled path) to the
    // accumulated H error, leaving room for a tol*value tail bound so the
    // total stays within 2 tol * value
    double tol_panel = 0.5 * tol * ref * std::pow(0.5, panel + 1);

    double H_right;
    if (closed_R) {
      auto integrand = [&](double u) { return std::exp(-(model.cumulative_hazard_closed_form(u) - R_t)); };
      SimpsonEstimate est = integrate(integrand, left, right, tol_panel, options.max_depth, evals);
      result.value += est.value;
      result.abs_error_estimate += est.error;
      H_right = model.cumulative_hazard_closed_form(right) - R_t;
    } else {
      auto r = [&](double u) { return model.hazard(u); };
      double m = 0.5 * (left + right);
      double ra = r(left), rm = r(m), rb = r(right);
      evals += 3;
      CoupledEstimate est =
          coupled_segment(r, left, ra, m, rm, right, rb, H_left, tol_panel,
                          0.5 * tol * std::pow(0.5, panel + 1), options.max_depth, evals);
      result.value += est.mass;
      result.abs_error_estimate += est.mass_error;
      H_error += est.H_error;
      H_right = H_left + est.dH;
    }

    TailInfo tail = tail_past(model, right, H_right);
    if (tail.known) {
      if (tail.exact && std::exp(-H_right) <= stop_discount) {
        result.value += tail.amount;
        result.truncation_point = right;
        result.evaluations = evals;
        result.abs_error_estimate += result.value * H_error;
        return result;
      }
      if (!tail.exact && tail.amount <= tol * std::max(result.value, 1e-300)) {
        result.abs_error_estimate += tail.amount + result.value * H_error;
        result.truncation_point = right;
        result.evaluations = evals;
        return result;
      }
    }
    left = right;
    H_left = H_right;
  }
  throw quadrature_error(
      "tail not certified within the panel cap at t=" + std::to_string(t) +
      " (no usable hazard floor or closed-form tail below tolerance)");
}

double de1_residual(const HazardModel& model, double t, double h, double tol) {
  if (!(h > 0) || !(t > h)) throw std::invalid_argument("de1_residual requires t > h > 0");
  double m_plus = mrl_quadrature(model, t + h, tol).value;
  double m_minus = mrl_quadrature(model, t - h, tol).value;
  double m_mid = mrl_quadrature(model, t, tol).value;
  double derivative = (m_plus - m_minus) / (2 * h);
  return std::abs(derivative - (model.hazard(t) * m_mid - 1));
}

namespace {

bool is_oscillating(const HazardModel& model) {
  return std::holds_alternative<OscillatingParams>(model.params());
}

// Window sample points over [T, 2T].  The oscillating family gets clusters
// spanning one full period of cos(t^2) at phase step <= pi/(8t) so grid
// aliasing cannot hide the extremes.
std::vector<double> window_points(const HazardModel& model, double lo, double hi, int n) {
  std::vector<double> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    pts.push_back(lo + (hi - lo) * i / (n - 1));
  }
  if (is_oscillating(model)) {
    const int centers = 48, per_cluster = 33;
    for (int j = 0; j < centers; ++j) {
      double tau = lo + (hi - lo) * j / centers;
      double period = kPi / tau;  // phase t^2 advances 2 pi over this span
      for (int i = 0; i < per_cluster; ++i) {
        double p = tau + period * i / (per_cluster - 1);
        if (p <= hi) pts.push_back(p);
      }
    }
  }
  return pts;
}

// Runs fn(i) for i in [0, n) across a few threads; per-index failures become
// NaN slots so the merged result is identical however the work is scheduled.
void parallel_points(std::size_t n, const std::function<double(std::size_t)>& fn,
                     std::vector<double>& out) {
  out.assign(n, std::numeric_limits<double>::quiet_NaN());
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
  if (workers <= 1 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        out[i] = fn(i);
      } catch (const quadrature_error&) {
      }
    }
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          out[i] = fn(i);
        } catch (const quadrature_error&) {
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

LimitDiagnostics limit_diagnostics(const HazardModel& model, double T, int grid_points) {
  if (!(T > 0)) throw std::invalid_argument("window start must be positive");
  if (grid_points < 16) throw std::invalid_argument("need at least 16 grid points");

  LimitDiagnostics diag;
  diag.window_lo = T;
  diag.window_hi = 2 * T;

  const double quad_tol = 1e-9;
  std::vector<double> pts = window_points(model, T, 2 * T, grid_points);
  std::vector<double> m_values;
  parallel_points(
      pts.size(), [&](std::size_t i) { return mrl_quadrature(model, pts[i], quad_tol).value; },
      m_values);

  diag.inf_rm = diag.inf_m = std::numeric_limits<double>::infinity();
  diag.sup_rm = diag.sup_m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::isnan(m_values[i])) {
      ++diag.failed_points;
      continue;
    }
    double m = m_values[i];
    double rm = model.hazard(pts[i]) * m;
    diag.inf_m = std::min(diag.inf_m, m);
    diag.sup_m = std::max(diag.sup_m, m);
    diag.inf_rm = std::min(diag.inf_rm, rm);
    diag.sup_rm = std::max(diag.sup_rm, rm);
  }

  // essential sup/inf stand-ins: continuous rates make the grid extremes
  // honest (log-spaced out to 10T, phase clusters for the oscillating family)
  std::vector<double> tail_pts;
  const int tail_n = 512;
  tail_pts.reserve(tail_n);
  for (int i = 0; i < tail_n; ++i) {
    tail_pts.push_back(T * std::pow(10.0, static_cast<double>(i) / (tail_n - 1)));
  }
  if (is_oscillating(model)) {
    const int centers = 16, per_cluster = 33;
    for (int j = 0; j < centers; ++j) {
      double tau = T * std::pow(10.0, static_cast<double>(j) / centers);
      double period = kPi / tau;
      for (int i = 0; i < per_cluster; ++i) tail_pts.push_back(tau + period * i / (per_cluster - 1));
    }
  }
  diag.alpha_hat = std::numeric_limits<double>::infinity();
  diag.beta_hat = -std::numeric_limits<double>::infinity();
  diag.lambda_hat = 0;
  for (double x : tail_pts) {
    double r = model.hazard(x);
    diag.alpha_hat = std::min(diag.alpha_hat, r);
    diag.beta_hat = std::max(diag.beta_hat, r);
    Jet s = model.reciprocal_hazard_jet(x, 1);
    diag.lambda_hat = std::max(diag.lambda_hat, std::abs(s.derivative(1)));
  }

  double sprime_T = model.reciprocal_hazard_jet(T, 1).derivative(1);
  if (std::abs(1 - sprime_T) > 1e-12) {
    diag.sprime_limit_bound = 1 / (1 - sprime_T);
  }
  return diag;
}

bool hyp1_check(const HazardModel& model, std::span<const double> T_list, double tol) {
  if (T_list.empty()) throw std::invalid_argument("T list must be non-empty");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  for (std::size_t i = 1; i < T_list.size(); ++i) {
    if (!(T_list[i] > T_list[i - 1])) {
      throw std::invalid_argument("T list must be strictly increasing");
    }
  }
  // work with log(s(T)) - R(T): the product underflows long before the
  // hypothesis becomes interesting
  double prev = std::numeric_limits<double>::infinity();
  for (double T : T_list) {
    double r = model.hazard(T);
    if (!(r > 0)) return false;
    double R = cumulative_hazard(model, T, 1e-6 * std::max(1.0, T)).value;
    double log_value = -std::log(r) - R;
    if (!(log_value < prev)) return false;
    prev = log_value;
  }
  return prev < std::log(tol);
}

}  // namespace mrl
