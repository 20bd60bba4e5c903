#pragma once

/**
 * Asymptotic expansion of the mean residual life in terms of the reciprocal
 * rate s = 1/r and its derivatives, computed three independent ways:
 *
 *  - the operator recursion  g_{k+1} = s * (d/dt) g_k  over jets,
 *  - the explicit multi-index form  s * sum d(j_1..j_k) prod s^(j_p),
 *    with integer coefficients generated by expanding
 *    prod_{p=1..k} (x_1 + ... + x_p),
 *  - the 1/r-grouped form  sum c_k r^(-k-1), where c_k is a signed sum over
 *    integer partitions of k into parts >= 2 with exact rational weights.
 *
 * The first is the working evaluator; the other two exist as cross-checks and
 * as exact coefficient tables.  Tables are computed once per order and cached
 * behind a mutex; callers only ever see complete tables.
 */

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mrl/model.hpp"

namespace mrl {

/// Exact rational with 64-bit numerator/denominator, always normalized with
/// a positive denominator.  Construction and arithmetic throw
/// std::overflow_error rather than wrap.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;

  std::string str() const;

 private:
  std::int64_t num_, den_;
};

/// Exact rational factorial; throws std::overflow_error past 64-bit range.
std::int64_t factorial(int n);

/// Values of the expansion terms at one point: terms[k] holds the k-th term
/// (terms[0] = s(t)) and partial_sums[k] the cumulative sum through k.
struct ThetaSequence {
  double center = 0;
  int order = 0;
  std::vector<double> terms;
  std::vector<double> partial_sums;
};

/// Integer coefficient table for the multi-index form of the k-th expansion
/// term.  Keys are exponent tuples (j_1, ..., j_k) with sum j_p = k; the
/// monomial for a key is s * prod_p s^(j_p).
struct ThetaCoefficientTable {
  int k = 0;
  std::map<std::vector<int>, std::int64_t> coefficients;
};

/// One partition term of c_k: alpha[j-1] copies of part size j+1, carrying
/// the exact weight k! * (-1)^p * prod_j 1/(alpha_j! ((j+1)!)^alpha_j) on the
/// monomial prod_j (r^(j))^alpha_j.
struct PartitionTerm {
  int parts = 0;               // p = sum_j alpha_j
  std::vector<int> exponents;  // exponents[j-1] = alpha_j
  Rational coefficient;
};

struct CCoefficientTable {
  int k = 0;
  std::vector<PartitionTerm> terms;
};

inline constexpr int kDefaultThetaTableCap = 8;
inline constexpr int kDefaultCTableCap = 12;

/// Expansion terms 0..n at t via the operator recursion over jets.  Computing
/// n terms consumes a jet of s of order exactly n; the recursion itself is
/// exact in the surviving coefficients.
ThetaSequence theta_terms(const HazardModel& model, double t, int n);

/// Complete multi-index table for order k (cached).  Throws
/// std::length_error beyond the cap - the table has k! total mass.
const ThetaCoefficientTable& theta_coefficients(int k, int cap = kDefaultThetaTableCap);

/// k-th expansion term at t evaluated from the multi-index table; agrees
/// with theta_terms up to roundoff.
double theta_via_coefficients(const HazardModel& model, double t, int k,
                              int cap = kDefaultThetaTableCap);

/// Partition table for c_k (cached).  Throws std::length_error beyond cap.
const CCoefficientTable& c_coefficients(int k, int cap = kDefaultCTableCap);

/// c_k(t), the polynomial in r', ..., r^(k-1).
double c_value(const HazardModel& model, double t, int k, int cap = kDefaultCTableCap);

/// c_k(t) * r(t)^(-k-1), the k-th term of the 1/r-grouped expansion.
double c_term(const HazardModel& model, double t, int k, int cap = kDefaultCTableCap);

struct ExpansionResult {
  double value = 0;     // partial sum through order n
  ThetaSequence terms;  // full term sequence for diagnostics
};

/// n-term truncation of the expansion at t.
ExpansionResult mrl_expansion(const HazardModel& model, double t, int n);

/// Aggregation of the multi-index table by monomial: key is the sorted list
/// of nonzero derivative orders, e.g. for k=3 the key {1,1,2} carries 4 on
/// the monomial s^2 s' s' s''... collapsed as written in reports.
std::map<std::vector<int>, std::int64_t> theta_monomials(int k, int cap = kDefaultThetaTableCap);

/// Aggregation of the partition table by monomial: key is the sorted list of
/// derivative orders with multiplicity ({1,1} for (r')^2).
std::map<std::vector<int>, Rational> c_monomials(int k, int cap = kDefaultCTableCap);

/// Human-readable polynomial listings, e.g. "s*(s')^3 + 4*s^2*s'*s'' + s^3*s'''".
std::string theta_polynomial_text(int k, int cap = kDefaultThetaTableCap);
std::string c_polynomial_text(int k, int cap = kDefaultCTableCap);

}  // namespace mrl
