#include "mrl/jet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mrl {

namespace {

void check_finite(const std::vector<double>& coeffs) {
  for (double c : coeffs) {
    if (!std::isfinite(c)) {
      throw std::domain_error("jet coefficient is not finite");
    }
  }
}

void check_same_center(const Jet& a, const Jet& b) {
  if (a.center() != b.center()) {
    throw std::invalid_argument("jet centers differ: " + std::to_string(a.center()) + " vs " +
                                std::to_string(b.center()));
  }
}

}  // namespace

Jet::Jet(double center, std::vector<double> coeffs) : center_(center), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("jet needs at least the order-0 coefficient");
  }
  check_finite(coeffs_);
}

Jet Jet::variable(double t0, int order) {
  if (order < 0) {
    throw std::invalid_argument("jet order must be non-negative");
  }
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = t0;
  if (order >= 1) c[1] = 1.0;
  return Jet(t0, std::move(c));
}

Jet Jet::constant(double value, int order, double center) {
  if (order < 0) {
    throw std::invalid_argument("jet order must be non-negative");
  }
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = value;
  return Jet(center, std::move(c));
}

double Jet::coeff(int k) const {
  if (k < 0) throw std::invalid_argument("coefficient index must be non-negative");
  return k <= order() ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order()) {
    throw std::invalid_argument("derivative order out of range");
  }
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return coeffs_[static_cast<std::size_t>(k)] * factorial;
}

Jet Jet::truncated(int new_order) const {
  if (new_order < 0 || new_order > order()) {
    throw std::invalid_argument("truncation order out of range");
  }
  return Jet(center_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
}

Jet operator+(const Jet& a, const Jet& b) {
  check_same_center(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) + b.coeff(k);
  return Jet(a.center(), std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator-(const Jet& a) {
  std::vector<double> c = a.coeffs();
  for (double& x : c) x = -x;
  return Jet(a.center(), std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  check_same_center(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  // truncated Cauchy product; normalized coefficients need no binomials
  for (int k = 0; k <= n; ++k) {
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) sum += a.coeff(j) * b.coeff(k - j);
    c[k] = sum;
  }
  return Jet(a.center(), std::move(c));
}

Jet operator+(const Jet& a, double v) {
  std::vector<double> c = a.coeffs();
  c[0] += v;
  return Jet(a.center(), std::move(c));
}

Jet operator+(double v, const Jet& a) { return a + v; }

Jet operator-(double v, const Jet& a) { return (-a) + v; }

Jet operator*(const Jet& a, double v) {
  std::vector<double> c = a.coeffs();
  for (double& x : c) x *= v;
  return Jet(a.center(), std::move(c));
}

Jet operator*(double v, const Jet& a) { return a * v; }

Jet reciprocal(const Jet& a) {
  if (a.value() == 0.0) {
    throw std::domain_error("jet reciprocal undefined: leading coefficient is zero");
  }
  int n = a.order();
  std::vector<double> b(static_cast<std::size_t>(n) + 1);
  double inv = 1.0 / a.coeff(0);
  b[0] = inv;
  // b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) sum += a.coeff(j) * b[k - j];
    b[k] = -inv * sum;
  }
  return Jet(a.center(), std::move(b));
}

std::pair<Jet, Jet> sin_cos(const Jet& a) {
  int n = a.order();
  std::vector<double> s(static_cast<std::size_t>(n) + 1), c(static_cast<std::size_t>(n) + 1);
  s[0] = std::sin(a.coeff(0));
  c[0] = std::cos(a.coeff(0));
  // s_k = (1/k) sum_{j=1..k} j a_j c_{k-j};  c_k = -(1/k) sum_{j=1..k} j a_j s_{k-j}
  for (int k = 1; k <= n; ++k) {
    double ss = 0.0, cs = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.coeff(j) * c[k - j];
      cs += j * a.coeff(j) * s[k - j];
    }
    s[k] = ss / k;
    c[k] = -cs / k;
  }
  return {Jet(a.center(), std::move(s)), Jet(a.center(), std::move(c))};
}

Jet exp(const Jet& a) {
  int n = a.order();
  std::vector<double> e(static_cast<std::size_t>(n) + 1);
  e[0] = std::exp(a.coeff(0));
  // e_k = (1/k) sum_{j=1..k} j a_j e_{k-j}
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) sum += j * a.coeff(j) * e[k - j];
    e[k] = sum / k;
  }
  return Jet(a.center(), std::move(e));
}

Jet pow(const Jet& a, double p) {
  if (p == 0.0) return Jet::constant(1.0, a.order(), a.center());
  bool integral = std::nearbyint(p) == p && std::abs(p) < 64;
  if (integral) {
    int ip = static_cast<int>(p);
    Jet base = ip < 0 ? reciprocal(a) : a;
    int e = ip < 0 ? -ip : ip;
    Jet result = base;
    for (int i = 1; i < e; ++i) result = result * base;
    return result;
  }
  if (a.value() <= 0.0) {
    throw std::domain_error("jet pow with fractional exponent needs a positive leading coefficient");
  }
  int n = a.order();
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  w[0] = std::pow(a.coeff(0), p);
  // w_k = (1/(k a_0)) sum_{j=1..k} ((p+1)j - k) a_j w_{k-j}
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) sum += ((p + 1.0) * j - k) * a.coeff(j) * w[k - j];
    w[k] = sum / (k * a.coeff(0));
  }
  return Jet(a.center(), std::move(w));
}

Jet derivative(const Jet& a) {
  if (a.order() < 1) {
    throw std::invalid_argument("cannot differentiate an order-0 jet");
  }
  int n = a.order() - 1;
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = (k + 1) * a.coeff(k + 1);
  return Jet(a.center(), std::move(c));
}

}  // namespace mrl
