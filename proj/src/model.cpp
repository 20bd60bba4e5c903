#include "mrl/model.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace mrl {

namespace {

// Shortest decimal string that parses back to exactly the same double.
std::string format_shortest(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

double parse_number(std::string_view text, std::string_view key) {
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || !std::isfinite(v)) {
    throw std::invalid_argument("model parameter '" + std::string(key) + "' is not a finite number: '" +
                                s + "'");
  }
  return v;
}

void require(bool ok, const char* constraint) {
  if (!ok) {
    throw std::invalid_argument(std::string("model requires ") + constraint);
  }
}

struct FamilyInfo {
  const char* name;
  std::vector<const char*> keys;
};

FamilyInfo family_info(const ModelParams& p) {
  struct Visitor {
    FamilyInfo operator()(const ExponentialParams&) const { return {"exponential", {"rate"}}; }
    FamilyInfo operator()(const WeibullParams&) const { return {"weibull", {"shape", "scale"}}; }
    FamilyInfo operator()(const FracLinearParams&) const { return {"fraclinear", {"c", "d"}}; }
    FamilyInfo operator()(const LinearMrlParams&) const { return {"linearmrl", {"a", "b"}}; }
    FamilyInfo operator()(const OscillatingParams&) const { return {"oscillating", {"a", "b", "c", "d"}}; }
  };
  return std::visit(Visitor{}, p);
}

std::vector<double> param_values(const ModelParams& p) {
  struct Visitor {
    std::vector<double> operator()(const ExponentialParams& q) const { return {q.rate}; }
    std::vector<double> operator()(const WeibullParams& q) const { return {q.shape, q.scale}; }
    std::vector<double> operator()(const FracLinearParams& q) const { return {q.c, q.d}; }
    std::vector<double> operator()(const LinearMrlParams& q) const { return {q.a, q.b}; }
    std::vector<double> operator()(const OscillatingParams& q) const { return {q.a, q.b, q.c, q.d}; }
  };
  return std::visit(Visitor{}, p);
}

void check_constraints(const ModelParams& p) {
  struct Visitor {
    void operator()(const ExponentialParams& q) const { require(q.rate > 0, "rate>0"); }
    void operator()(const WeibullParams& q) const {
      require(q.shape > 0, "shape>0");
      require(q.scale > 0, "scale>0");
    }
    void operator()(const FracLinearParams& q) const {
      require(q.c > 0, "c>0");
      require(q.d >= 0 && q.d < 1, "0<=d<1");
    }
    void operator()(const LinearMrlParams& q) const {
      require(q.a > 0, "a>0");
      require(q.b >= 0, "b>=0");
    }
    void operator()(const OscillatingParams& q) const {
      require(q.a > 0 && q.b > 0 && q.c > 0 && q.d > 0, "a,b,c,d>0");
      require(q.a > q.b, "a>b");
      require(q.d > 2 * q.b, "d>2b");
      require(q.c * q.c > (q.a + q.b) * q.d, "c^2>(a+b)d");
    }
  };
  std::visit(Visitor{}, p);
}

void check_time(double t) {
  if (!(t >= 0)) {
    throw std::invalid_argument("time must be non-negative");
  }
}

// Positivity envelope for the oscillating family: r(u) >= psi(u) for u >= 0,
// with psi(u) = ((d-2b)d u^2 + 2c(d-b) u + c^2-(a+b)d) / ((a+b)(c+du)).
double oscillating_envelope(const OscillatingParams& q, double u) {
  double p2 = (q.d - 2 * q.b) * q.d;
  double p1 = 2 * q.c * (q.d - q.b);
  double p0 = q.c * q.c - (q.a + q.b) * q.d;
  return ((p2 * u + p1) * u + p0) / ((q.a + q.b) * (q.c + q.d * u));
}

double oscillating_envelope_min(const OscillatingParams& q, double t0) {
  // psi is rational with positive linear growth; its minimum over [t0, inf)
  // sits at t0 or at a critical point.  psi' = 0 reduces to
  // p2 d u^2 + 2 p2 c u + (p1 c - p0 d) = 0.
  double p2 = (q.d - 2 * q.b) * q.d;
  double p1 = 2 * q.c * (q.d - q.b);
  double p0 = q.c * q.c - (q.a + q.b) * q.d;
  double best = oscillating_envelope(q, t0);
  double qa = p2 * q.d;
  double qb = 2 * p2 * q.c;
  double qc = p1 * q.c - p0 * q.d;
  double disc = qb * qb - 4 * qa * qc;
  if (disc > 0) {
    double root = std::sqrt(disc);
    for (double u : {(-qb - root) / (2 * qa), (-qb + root) / (2 * qa)}) {
      if (u > t0) best = std::min(best, oscillating_envelope(q, u));
    }
  }
  return best;
}

}  // namespace

HazardModel::HazardModel(ModelParams params) : params_(std::move(params)) {
  name_ = family_info(params_).name;
  check_constraints(params_);
  validate();
}

std::string HazardModel::spec() const {
  FamilyInfo info = family_info(params_);
  std::vector<double> values = param_values(params_);
  std::string out = info.name;
  for (std::size_t i = 0; i < info.keys.size(); ++i) {
    out += (i == 0 ? ':' : ',');
    out += info.keys[i];
    out += '=';
    out += format_shortest(values[i]);
  }
  return out;
}

double HazardModel::hazard(double t) const {
  check_time(t);
  struct Visitor {
    double t;
    double operator()(const ExponentialParams& q) const { return q.rate; }
    double operator()(const WeibullParams& q) const {
      if (t == 0 && q.shape < 1) {
        throw std::domain_error("weibull hazard is unbounded at t=0 for shape<1");
      }
      return (q.shape / q.scale) * std::pow(t / q.scale, q.shape - 1);
    }
    double operator()(const FracLinearParams& q) const { return 1.0 / (q.c + q.d * t); }
    double operator()(const LinearMrlParams& q) const { return (1 + q.b) / (q.a + q.b * t); }
    double operator()(const OscillatingParams& q) const {
      double t2 = t * t;
      return (q.c + (q.d + 2 * q.b * std::cos(t2)) * t) / (q.a + q.b * std::sin(t2)) -
             q.d / (q.c + q.d * t);
    }
  };
  return std::visit(Visitor{t}, params_);
}

Jet HazardModel::hazard_jet(double t, int order) const {
  check_time(t);
  struct Visitor {
    double t;
    int order;
    Jet operator()(const ExponentialParams& q) const { return Jet::constant(q.rate, order, t); }
    Jet operator()(const WeibullParams& q) const {
      if (t == 0 && q.shape < 1) {
        throw std::domain_error("weibull hazard is unbounded at t=0 for shape<1");
      }
      Jet x = Jet::variable(t, order);
      return (q.shape / q.scale) * pow(x * (1.0 / q.scale), q.shape - 1);
    }
    Jet operator()(const FracLinearParams& q) const {
      return reciprocal(Jet::variable(t, order) * q.d + q.c);
    }
    Jet operator()(const LinearMrlParams& q) const {
      return (1 + q.b) * reciprocal(Jet::variable(t, order) * q.b + q.a);
    }
    Jet operator()(const OscillatingParams& q) const {
      Jet x = Jet::variable(t, order);
      auto [sin2, cos2] = sin_cos(x * x);
      Jet numer = (cos2 * (2 * q.b) + q.d) * x + q.c;
      Jet denom = sin2 * q.b + q.a;
      return numer * reciprocal(denom) - q.d * reciprocal(x * q.d + q.c);
    }
  };
  return std::visit(Visitor{t, order}, params_);
}

Jet HazardModel::reciprocal_hazard_jet(double t, int order) const {
  Jet r = hazard_jet(t, order);
  if (r.value() == 0.0) {
    throw std::domain_error("hazard vanishes at t=" + std::to_string(t) +
                            "; reciprocal rate undefined");
  }
  return reciprocal(r);
}

bool HazardModel::has_closed_form_mrl() const {
  return !std::holds_alternative<WeibullParams>(params_);
}

double HazardModel::mrl_closed_form(double t) const {
  check_time(t);
  struct Visitor {
    double t;
    double operator()(const ExponentialParams& q) const { return 1.0 / q.rate; }
    double operator()(const WeibullParams&) const {
      throw unsupported_error("weibull declares no closed-form mean residual life");
    }
    double operator()(const FracLinearParams& q) const { return (q.c + q.d * t) / (1 - q.d); }
    double operator()(const LinearMrlParams& q) const { return q.a + q.b * t; }
    double operator()(const OscillatingParams& q) const {
      return (q.a + q.b * std::sin(t * t)) / (q.c + q.d * t);
    }
  };
  return std::visit(Visitor{t}, params_);
}

bool HazardModel::has_closed_form_cumulative_hazard() const {
  return !std::holds_alternative<OscillatingParams>(params_);
}

double HazardModel::cumulative_hazard_closed_form(double t) const {
  check_time(t);
  struct Visitor {
    double t;
    double operator()(const ExponentialParams& q) const { return q.rate * t; }
    double operator()(const WeibullParams& q) const { return std::pow(t / q.scale, q.shape); }
    double operator()(const FracLinearParams& q) const {
      return q.d > 0 ? std::log1p(q.d * t / q.c) / q.d : t / q.c;
    }
    double operator()(const LinearMrlParams& q) const {
      return q.b > 0 ? (1 + q.b) / q.b * std::log1p(q.b * t / q.a) : t / q.a;
    }
    double operator()(const OscillatingParams&) const {
      throw unsupported_error("oscillating declares no closed-form cumulative hazard");
    }
  };
  return std::visit(Visitor{t}, params_);
}

std::optional<double> HazardModel::sprime_sup_analytic(double t) const {
  struct Visitor {
    double t;
    std::optional<double> operator()(const ExponentialParams&) const { return 0.0; }
    std::optional<double> operator()(const WeibullParams& q) const {
      // |s'(x)| = (|1-shape|/shape) (x/scale)^(-shape), decreasing in x
      if (t <= 0) return std::nullopt;
      return std::abs(1 - q.shape) / q.shape * std::pow(t / q.scale, -q.shape);
    }
    std::optional<double> operator()(const FracLinearParams& q) const { return q.d; }
    std::optional<double> operator()(const LinearMrlParams& q) const { return q.b / (1 + q.b); }
    std::optional<double> operator()(const OscillatingParams&) const { return std::nullopt; }
  };
  return std::visit(Visitor{t}, params_);
}

std::optional<double> HazardModel::hazard_floor(double t0) const {
  struct Visitor {
    double t0;
    std::optional<double> operator()(const ExponentialParams& q) const { return q.rate; }
    std::optional<double> operator()(const WeibullParams& q) const {
      if (q.shape == 1) return 1.0 / q.scale;
      if (q.shape < 1) return std::nullopt;  // r decreases to zero
      double r0 = (q.shape / q.scale) * std::pow(t0 / q.scale, q.shape - 1);
      return r0 > 0 ? std::optional<double>(r0) : std::nullopt;
    }
    std::optional<double> operator()(const FracLinearParams& q) const {
      return q.d == 0 ? std::optional<double>(1.0 / q.c) : std::nullopt;
    }
    std::optional<double> operator()(const LinearMrlParams& q) const {
      return q.b == 0 ? std::optional<double>((1 + q.b) / q.a) : std::nullopt;
    }
    std::optional<double> operator()(const OscillatingParams& q) const {
      double floor = oscillating_envelope_min(q, t0);
      return floor > 0 ? std::optional<double>(floor) : std::nullopt;
    }
  };
  return std::visit(Visitor{t0}, params_);
}

void HazardModel::validate() const {
  bool origin_ok = !std::holds_alternative<WeibullParams>(params_);
  // positivity scan of r over a coarse log grid
  for (int i = 0; i <= 96; ++i) {
    double t = origin_ok && i == 0 ? 0.0 : 1e-3 * std::pow(10.0, 5.0 * i / 96.0);
    if (!(hazard(t) > 0) && t != 0.0) {
      throw std::domain_error(name_ + ": hazard is not positive at t=" + std::to_string(t));
    }
  }
  // declared closed-form m must satisfy m' = r m - 1 on a spot-check grid
  if (has_closed_form_mrl()) {
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      double h = 1e-6 * std::max(1.0, t);
      double lhs = (mrl_closed_form(t + h) - mrl_closed_form(t - h)) / (2 * h);
      double rhs = hazard(t) * mrl_closed_form(t) - 1;
      if (std::abs(lhs - rhs) > 1e-3 * std::max(1.0, std::abs(rhs))) {
        throw std::domain_error(name_ + ": closed-form m violates m'=rm-1 at t=" + std::to_string(t));
      }
    }
  }
  // declared floors must sit below the sampled hazard
  for (double t0 : {0.0, 1.0, 10.0}) {
    auto floor = hazard_floor(t0);
    if (!floor) continue;
    for (int i = 0; i <= 32; ++i) {
      double x = t0 + 100.0 * i / 32.0;
      if (x == 0 && !origin_ok) continue;
      if (hazard(x) < *floor * (1 - 1e-9)) {
        throw std::domain_error(name_ + ": hazard floor is inconsistent at t=" + std::to_string(x));
      }
    }
  }
}

HazardModel parse_model(std::string_view spec) {
  auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::vector<std::pair<std::string, double>> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw std::invalid_argument("malformed model parameter '" + std::string(item) +
                                    "' (expected key=value)");
      }
      kv.emplace_back(std::string(item.substr(0, eq)), parse_number(item.substr(eq + 1), item.substr(0, eq)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }

  auto get = [&](const char* key) {
    for (auto& item : kv) {
      if (item.first == key) return item.second;
    }
    throw std::invalid_argument(name + " requires parameter '" + key + "'");
  };
  auto check_keys = [&](std::initializer_list<const char*> keys) {
    for (auto& item : kv) {
      bool known = false;
      for (const char* key : keys) known = known || item.first == key;
      if (!known) throw std::invalid_argument(name + " has no parameter '" + item.first + "'");
    }
  };

  try {
    if (name == "exponential") {
      check_keys({"rate"});
      return HazardModel(ExponentialParams{get("rate")});
    }
    if (name == "weibull") {
      check_keys({"shape", "scale"});
      return HazardModel(WeibullParams{get("shape"), get("scale")});
    }
    if (name == "fraclinear") {
      check_keys({"c", "d"});
      return HazardModel(FracLinearParams{get("c"), get("d")});
    }
    if (name == "linearmrl") {
      check_keys({"a", "b"});
      return HazardModel(LinearMrlParams{get("a"), get("b")});
    }
    if (name == "oscillating") {
      check_keys({"a", "b", "c", "d"});
      return HazardModel(OscillatingParams{get("a"), get("b"), get("c"), get("d")});
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(spec) + ": " + e.what());
  }
  throw std::invalid_argument("unknown model '" + name +
                              "' (known: exponential, weibull, fraclinear, linearmrl, oscillating)");
}

std::vector<HazardModel> default_catalog() {
  std::vector<HazardModel> models;
  models.push_back(HazardModel(ExponentialParams{0.5}));
  models.push_back(HazardModel(WeibullParams{2.0, 1.0}));
  models.push_back(HazardModel(FracLinearParams{2.0, 0.25}));
  models.push_back(HazardModel(LinearMrlParams{1.0, 0.5}));
  models.push_back(HazardModel(OscillatingParams{2.0, 1.0, 4.0, 3.0}));
  return models;
}

}  // namespace mrl
