#include <doctest.h>

#include <cmath>
#include <future>
#include <stdexcept>

#include "mrl/expansion.hpp"

using mrl::c_coefficients;
using mrl::c_monomials;
using mrl::HazardModel;
using mrl::parse_model;
using mrl::Rational;
using mrl::theta_coefficients;
using mrl::theta_monomials;
using mrl::theta_terms;
using mrl::theta_via_coefficients;

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-1, 8).str() == "-1/8");
  CHECK(mrl::factorial(12) == 479001600);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("operator recursion term values") {
  SUBCASE("fraclinear: theta_k = s d^k") {
    auto seq = theta_terms(parse_model("fraclinear:c=2,d=0.5"), 0.0, 3);
    REQUIRE(seq.terms.size() == 4);
    CHECK(seq.terms[0] == doctest::Approx(2.0));
    CHECK(seq.terms[1] == doctest::Approx(1.0));
    CHECK(seq.terms[2] == doctest::Approx(0.5));
    CHECK(seq.terms[3] == doctest::Approx(0.25));
    CHECK(seq.partial_sums[3] == doctest::Approx(3.75));
  }
  SUBCASE("constant s is killed by the derivative") {
    auto seq = theta_terms(parse_model("exponential:rate=2"), 13.0, 4);
    CHECK(seq.terms[0] == doctest::Approx(0.5));
    for (int k = 1; k <= 4; ++k) CHECK(seq.terms[k] == 0.0);
  }
  SUBCASE("n = 0 is just s") {
    auto seq = theta_terms(parse_model("linearmrl:a=1,b=0.5"), 2.0, 0);
    REQUIRE(seq.terms.size() == 1);
    CHECK(seq.terms[0] == doctest::Approx((1 + 0.5 * 2) / 1.5));
  }
  SUBCASE("partial sums telescope") {
    auto seq = theta_terms(parse_model("oscillating:a=2,b=1,c=4,d=3"), 2.0, 5);
    for (std::size_t k = 1; k < seq.terms.size(); ++k) {
      CHECK(seq.partial_sums[k] - seq.partial_sums[k - 1] ==
            doctest::Approx(seq.terms[k]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("multi-index coefficient tables") {
  SUBCASE("raw table for k=2") {
    const auto& table = theta_coefficients(2);
    REQUIRE(table.coefficients.size() == 2);
    CHECK(table.coefficients.at({2, 0}) == 1);
    CHECK(table.coefficients.at({1, 1}) == 1);
  }
  SUBCASE("aggregated monomials match the listed forms") {
    auto k3 = theta_monomials(3);
    REQUIRE(k3.size() == 3);
    CHECK(k3.at({1, 1, 1}) == 1);  // s (s')^3
    CHECK(k3.at({1, 2}) == 4);     // s^2 s' s''
    CHECK(k3.at({3}) == 1);        // s^3 s'''

    auto k4 = theta_monomials(4);
    REQUIRE(k4.size() == 5);
    CHECK(k4.at({1, 1, 1, 1}) == 1);
    CHECK(k4.at({1, 1, 2}) == 11);
    CHECK(k4.at({2, 2}) == 4);
    CHECK(k4.at({1, 3}) == 7);
    CHECK(k4.at({4}) == 1);
  }
  SUBCASE("total mass is k!") {
    for (int k = 0; k <= 8; ++k) {
      std::int64_t mass = 0;
      for (const auto& [key, coeff] : theta_coefficients(k).coefficients) mass += coeff;
      CHECK(mass == mrl::factorial(k));
    }
  }
  SUBCASE("cap is enforced but configurable") {
    CHECK_THROWS_AS(theta_coefficients(9), std::length_error);
    CHECK_NOTHROW(theta_coefficients(9, 9));
    CHECK_THROWS_AS(theta_coefficients(-1), std::invalid_argument);
  }
}

TEST_CASE("partition tables for the 1/r grouping") {
  CHECK(c_coefficients(0).terms.size() == 1);
  CHECK(c_coefficients(0).terms[0].coefficient == Rational(1));
  CHECK(c_coefficients(1).terms.empty());

  auto k2 = c_monomials(2);
  REQUIRE(k2.size() == 1);
  CHECK(k2.at({1}) == Rational(-1));  // c_2 = -r'

  auto k3 = c_monomials(3);
  REQUIRE(k3.size() == 1);
  CHECK(k3.at({2}) == Rational(-1));  // c_3 = -r''

  auto k4 = c_monomials(4);
  REQUIRE(k4.size() == 2);
  CHECK(k4.at({1, 1}) == Rational(3));  // 3 (r')^2
  CHECK(k4.at({3}) == Rational(-1));    // -r'''

  auto k5 = c_monomials(5);
  REQUIRE(k5.size() == 2);
  CHECK(k5.at({1, 2}) == Rational(10));  // 10 r' r''
  CHECK(k5.at({4}) == Rational(-1));     // -r''''

  CHECK_THROWS_AS(c_coefficients(13), std::length_error);
  CHECK_NOTHROW(c_coefficients(13, 13));
}

TEST_CASE("partition side conditions hold") {
  for (int k = 0; k <= 10; ++k) {
    for (const auto& term : c_coefficients(k, 10).terms) {
      int parts = 0, weight = 0;
      for (int j = 1; j <= static_cast<int>(term.exponents.size()); ++j) {
        parts += term.exponents[j - 1];
        weight += (j + 1) * term.exponents[j - 1];
      }
      CHECK(parts == term.parts);
      CHECK(weight == k);
      CHECK(parts <= k / 2);
    }
  }
}

TEST_CASE("coefficient listings") {
  CHECK(mrl::theta_polynomial_text(0) == "s");
  CHECK(mrl::theta_polynomial_text(1) == "s*s'");
  CHECK(mrl::theta_polynomial_text(2) == "s*(s')^2 + s^2*s''");
  CHECK(mrl::theta_polynomial_text(3) == "s*(s')^3 + 4*s^2*s'*s'' + s^3*s'''");
  CHECK(mrl::c_polynomial_text(0) == "1");
  CHECK(mrl::c_polynomial_text(1) == "0");
  CHECK(mrl::c_polynomial_text(2) == "-r'");
  CHECK(mrl::c_polynomial_text(4) == "3*(r')^2 - r'''");
  CHECK(mrl::c_polynomial_text(5) == "10*r'*r'' - r''''");
}

TEST_CASE("the two theta evaluations agree") {
  SUBCASE("fraclinear spot value") {
    HazardModel frac = parse_model("fraclinear:c=2,d=0.5");
    CHECK(theta_via_coefficients(frac, 0.0, 2) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("k = 1 is s s'") {
    for (const HazardModel& model : mrl::default_catalog()) {
      CAPTURE(model.name());
      mrl::Jet s = model.reciprocal_hazard_jet(2.0, 1);
      CHECK(theta_via_coefficients(model, 2.0, 1) ==
            doctest::Approx(s.value() * s.derivative(1)).epsilon(1e-12).scale(1.0));
    }
  }
  SUBCASE("weibull cross-check") {
    HazardModel weib = parse_model("weibull:shape=2,scale=1");
    auto seq = theta_terms(weib, 3.0, 4);
    for (int k = 0; k <= 4; ++k) {
      double via = theta_via_coefficients(weib, 3.0, k);
      CHECK(std::abs(seq.terms[k] - via) <= 1e-10 * std::max(1.0, std::abs(seq.terms[k])));
    }
  }
}

TEST_CASE("c_k values against the closed polynomials") {
  HazardModel weib = parse_model("weibull:shape=2,scale=1");
  double t = 3.0;
  mrl::Jet r = weib.hazard_jet(t, 4);
  double r1 = r.derivative(1), r2 = r.derivative(2), r3 = r.derivative(3), r4 = r.derivative(4);
  CHECK(mrl::c_value(weib, t, 0) == doctest::Approx(1.0));
  CHECK(mrl::c_value(weib, t, 1) == doctest::Approx(0.0));
  CHECK(mrl::c_value(weib, t, 2) == doctest::Approx(-r1));
  CHECK(mrl::c_value(weib, t, 3) == doctest::Approx(-r2).scale(1.0));
  CHECK(mrl::c_value(weib, t, 4) == doctest::Approx(3 * r1 * r1 - r3).scale(1.0));
  CHECK(mrl::c_value(weib, t, 5) == doctest::Approx(10 * r1 * r2 - r4).scale(1.0));
  CHECK(mrl::c_term(weib, t, 0) == doctest::Approx(1.0 / weib.hazard(t)));
}

TEST_CASE("fraclinear truncation error is the geometric remainder") {
  HazardModel frac = parse_model("fraclinear:c=2,d=0.5");
  for (double t : {0.0, 5.0}) {
    double s = 2 + 0.5 * t;
    double m = frac.mrl_closed_form(t);
    auto seq = theta_terms(frac, t, 8);
    for (int n = 0; n <= 8; ++n) {
      double expected = s * std::pow(0.5, n + 1) / (1 - 0.5);
      double actual = m - seq.partial_sums[n];
      CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("expansion partial sums") {
  SUBCASE("fraclinear geometric limit") {
    auto result = mrl::mrl_expansion(parse_model("fraclinear:c=2,d=0.5"), 0.0, 40);
    CHECK(result.value == doctest::Approx(4.0).epsilon(1e-10));
  }
  SUBCASE("exponential terminates at n = 0") {
    auto result = mrl::mrl_expansion(parse_model("exponential:rate=2"), 1.0, 0);
    CHECK(result.value == doctest::Approx(0.5));
  }
}

TEST_CASE("term decay improves with t for models satisfying the hypotheses") {
  for (const char* spec : {"weibull:shape=2,scale=1", "linearmrl:a=1,b=0.5", "fraclinear:c=2,d=0.25"}) {
    CAPTURE(spec);
    HazardModel model = parse_model(spec);
    auto near = theta_terms(model, 100.0, 4);
    auto far = theta_terms(model, 1000.0, 4);
    for (int k = 0; k <= 3; ++k) {
      if (near.terms[k] == 0.0 && far.terms[k] == 0.0) continue;  // identically vanishing
      double ratio_near = std::abs(near.terms[k + 1] / near.terms[k]);
      double ratio_far = std::abs(far.terms[k + 1] / far.terms[k]);
      CHECK(ratio_far <= ratio_near * (1 + 1e-9));
    }
  }
}

TEST_CASE("table caches are safe under concurrent first access") {
  std::vector<std::future<const mrl::ThetaCoefficientTable*>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [] { return &theta_coefficients(7); }));
  }
  std::vector<const mrl::ThetaCoefficientTable*> tables;
  for (auto& job : jobs) tables.push_back(job.get());
  for (const auto* table : tables) CHECK(table == tables.front());  // one shared immutable table
  std::int64_t mass = 0;
  for (const auto& [key, coeff] : tables.front()->coefficients) mass += coeff;
  CHECK(mass == mrl::factorial(7));
}

TEST_CASE("theta-sum through k=2 equals the quoted 1/r grouping exactly") {
  // s + ss' + s(s')^2 + s^2 s''  ==  r^-1 - r' r^-3 - r'' r^-4 + 3 (r')^2 r^-5
  // identically; the residual is pure roundoff
  HazardModel weib = parse_model("weibull:shape=2,scale=1");
  for (double t : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    auto seq = theta_terms(weib, t, 2);
    mrl::Jet r = weib.hazard_jet(t, 2);
    double rv = r.value(), r1 = r.derivative(1);
    double grouped = 1 / rv - r1 * std::pow(rv, -3.0) - r.derivative(2) * std::pow(rv, -4.0) +
                     3 * r1 * r1 * std::pow(rv, -5.0);
    CHECK(seq.partial_sums[2] ==
          doctest::Approx(grouped).epsilon(64 * std::numeric_limits<double>::epsilon()));
  }
}
