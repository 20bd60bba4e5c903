#include "mrl/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace mrl {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 wide = static_cast<__int128>(a) * b;
  if (wide > INT64_MAX || wide < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(wide);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  __int128 wide = static_cast<__int128>(a) + b;
  if (wide > INT64_MAX || wide < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(wide);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  std::int64_t g = std::gcd(a.den_, b.den_);
  std::int64_t lcm = checked_mul(a.den_ / g, b.den_);
  return Rational(checked_add(checked_mul(a.num_, lcm / a.den_), checked_mul(b.num_, lcm / b.den_)),
                  lcm);
}

Rational operator*(const Rational& a, const Rational& b) {
  Rational x(a.num_, b.den_);  // cross-reduce before multiplying
  Rational y(b.num_, a.den_);
  return Rational(checked_mul(x.num_, y.num_), checked_mul(x.den_, y.den_));
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f = checked_mul(f, i);
  return f;
}

ThetaSequence theta_terms(const HazardModel& model, double t, int n) {
  if (n < 0) throw std::invalid_argument("expansion order must be non-negative");
  Jet s = model.reciprocal_hazard_jet(t, n);
  ThetaSequence seq;
  seq.center = t;
  seq.order = n;
  seq.terms.reserve(n + 1);
  seq.partial_sums.reserve(n + 1);
  Jet g = s;
  seq.terms.push_back(g.value());
  seq.partial_sums.push_back(g.value());
  for (int k = 1; k <= n; ++k) {
    g = s * derivative(g);  // order drops by one per step
    seq.terms.push_back(g.value());
    seq.partial_sums.push_back(seq.partial_sums.back() + g.value());
  }
  return seq;
}

const ThetaCoefficientTable& theta_coefficients(int k, int cap) {
  if (k < 0) throw std::invalid_argument("coefficient order must be non-negative");
  if (k > cap) {
    throw std::length_error("theta coefficient table for k=" + std::to_string(k) +
                            " exceeds cap " + std::to_string(cap) + " (size grows as k!)");
  }
  static std::mutex mutex;
  static std::map<int, ThetaCoefficientTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  // expand prod_{p=1..k} (x_1 + ... + x_p) over exponent tuples
  ThetaCoefficientTable table;
  table.k = k;
  table.coefficients[std::vector<int>(k, 0)] = 1;
  for (int p = 1; p <= k; ++p) {
    std::map<std::vector<int>, std::int64_t> next;
    for (const auto& [key, coeff] : table.coefficients) {
      std::vector<int> bumped = key;
      for (int i = 0; i < p; ++i) {
        ++bumped[i];
        next[bumped] += coeff;
        --bumped[i];
      }
    }
    table.coefficients = std::move(next);
  }
  return cache.emplace(k, std::move(table)).first->second;
}

double theta_via_coefficients(const HazardModel& model, double t, int k, int cap) {
  const ThetaCoefficientTable& table = theta_coefficients(k, cap);
  Jet s = model.reciprocal_hazard_jet(t, k);
  std::vector<double> deriv(k + 1);
  for (int j = 0; j <= k; ++j) deriv[j] = s.derivative(j);
  long double sum = 0;
  for (const auto& [key, coeff] : table.coefficients) {
    long double monomial = coeff;
    for (int j : key) monomial *= deriv[j];
    sum += monomial;
  }
  return static_cast<double>(deriv[0] * sum);
}

namespace {

void enumerate_partitions(int k, int part, std::vector<int>& alpha, int remaining, int parts,
                          CCoefficientTable& table) {
  if (remaining == 0) {
    Rational coeff(parts % 2 == 0 ? 1 : -1);
    coeff = coeff * Rational(factorial(k));
    for (int j = 1; j <= static_cast<int>(alpha.size()); ++j) {
      int a = alpha[j - 1];
      if (a == 0) continue;
      std::int64_t den = factorial(a);
      std::int64_t pw = factorial(j + 1);
      for (int i = 0; i < a; ++i) den = checked_mul(den, pw);
      coeff = coeff * Rational(1, den);
    }
    table.terms.push_back({parts, alpha, coeff});
    return;
  }
  if (part > k) return;  // parts are j+1 >= 2; largest usable part is k
  // alpha[j-1] copies of part size j+1, with j = part - 1
  for (int count = 0; count * part <= remaining; ++count) {
    alpha[part - 2] = count;
    enumerate_partitions(k, part + 1, alpha, remaining - count * part, parts + count, table);
  }
  alpha[part - 2] = 0;
}

}  // namespace

const CCoefficientTable& c_coefficients(int k, int cap) {
  if (k < 0) throw std::invalid_argument("coefficient order must be non-negative");
  if (k > cap) {
    throw std::length_error("c coefficient table for k=" + std::to_string(k) + " exceeds cap " +
                            std::to_string(cap));
  }
  static std::mutex mutex;
  static std::map<int, CCoefficientTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  CCoefficientTable table;
  table.k = k;
  if (k == 0) {
    table.terms.push_back({0, {}, Rational(1)});
  } else {
    std::vector<int> alpha(k >= 2 ? k - 1 : 0, 0);
    if (k >= 2) enumerate_partitions(k, 2, alpha, k, 0, table);
  }
  // deterministic order: by part count, then lexicographic exponents
  std::sort(table.terms.begin(), table.terms.end(), [](const PartitionTerm& a, const PartitionTerm& b) {
    if (a.parts != b.parts) return a.parts < b.parts;
    return a.exponents < b.exponents;
  });
  return cache.emplace(k, std::move(table)).first->second;
}

double c_value(const HazardModel& model, double t, int k, int cap) {
  const CCoefficientTable& table = c_coefficients(k, cap);
  Jet r = model.hazard_jet(t, std::max(k - 1, 0));
  std::vector<double> deriv(std::max(k, 1));
  for (int j = 0; j <= std::max(k - 1, 0); ++j) deriv[j] = r.derivative(j);
  long double sum = 0;
  for (const PartitionTerm& term : table.terms) {
    long double monomial = term.coefficient.to_double();
    for (int j = 1; j <= static_cast<int>(term.exponents.size()); ++j) {
      for (int i = 0; i < term.exponents[j - 1]; ++i) monomial *= deriv[j];
    }
    sum += monomial;
  }
  return static_cast<double>(sum);
}

double c_term(const HazardModel& model, double t, int k, int cap) {
  double r = model.hazard(t);
  if (r <= 0) throw std::domain_error("hazard must be positive to evaluate the expansion");
  return c_value(model, t, k, cap) * std::pow(r, -(k + 1));
}

ExpansionResult mrl_expansion(const HazardModel& model, double t, int n) {
  ExpansionResult result;
  result.terms = theta_terms(model, t, n);
  result.value = result.terms.partial_sums.back();
  return result;
}

std::map<std::vector<int>, std::int64_t> theta_monomials(int k, int cap) {
  const ThetaCoefficientTable& table = theta_coefficients(k, cap);
  std::map<std::vector<int>, std::int64_t> monomials;
  for (const auto& [key, coeff] : table.coefficients) {
    std::vector<int> orders;
    for (int j : key) {
      if (j > 0) orders.push_back(j);
    }
    std::sort(orders.begin(), orders.end());
    monomials[orders] += coeff;
  }
  return monomials;
}

std::map<std::vector<int>, Rational> c_monomials(int k, int cap) {
  const CCoefficientTable& table = c_coefficients(k, cap);
  std::map<std::vector<int>, Rational> monomials;
  for (const PartitionTerm& term : table.terms) {
    std::vector<int> orders;
    for (int j = 1; j <= static_cast<int>(term.exponents.size()); ++j) {
      for (int i = 0; i < term.exponents[j - 1]; ++i) orders.push_back(j);
    }
    auto [it, inserted] = monomials.emplace(std::move(orders), term.coefficient);
    if (!inserted) it->second = it->second + term.coefficient;
  }
  return monomials;
}

namespace {

std::string primes(int j) { return std::string(static_cast<std::size_t>(j), '\''); }

std::string monomial_text(char symbol, int sym_power, const std::vector<int>& orders) {
  std::string out;
  auto append_factor = [&](const std::string& f) {
    if (!out.empty()) out += "*";
    out += f;
  };
  if (sym_power == 1) {
    append_factor({symbol});
  } else if (sym_power > 1) {
    append_factor(std::string{symbol} + "^" + std::to_string(sym_power));
  }
  for (std::size_t i = 0; i < orders.size();) {
    std::size_t run = i;
    while (run < orders.size() && orders[run] == orders[i]) ++run;
    int mult = static_cast<int>(run - i);
    std::string base = std::string{symbol} + primes(orders[i]);
    append_factor(mult == 1 ? base : "(" + base + ")^" + std::to_string(mult));
    i = run;
  }
  if (out.empty()) out = "1";
  return out;
}

}  // namespace

std::string theta_polynomial_text(int k, int cap) {
  auto monomials = theta_monomials(k, cap);
  std::string out;
  for (const auto& [orders, coeff] : monomials) {
    if (!out.empty()) out += " + ";
    if (coeff != 1) out += std::to_string(coeff) + "*";
    // leading s plus one factor of s per zero exponent
    int s_power = k - static_cast<int>(orders.size()) + 1;
    out += monomial_text('s', s_power, orders);
  }
  return out.empty() ? "0" : out;
}

std::string c_polynomial_text(int k, int cap) {
  auto monomials = c_monomials(k, cap);
  std::string out;
  for (const auto& [orders, coeff] : monomials) {
    if (coeff == Rational(0)) continue;
    bool negative = coeff.num() < 0;
    Rational mag = negative ? -coeff : coeff;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string body = monomial_text('r', 0, orders);
    if (mag == Rational(1) && body != "1") {
      out += body;
    } else if (body == "1") {
      out += mag.str();
    } else {
      out += mag.str() + "*" + body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace mrl
