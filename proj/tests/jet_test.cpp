#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "mrl/jet.hpp"

using mrl::Jet;

namespace {

void check_coeffs(const Jet& jet, const std::vector<double>& expected, double tol = 0) {
  REQUIRE(jet.order() + 1 == static_cast<int>(expected.size()));
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CAPTURE(k);
    if (tol == 0) {
      CHECK(jet.coeff(static_cast<int>(k)) == expected[k]);
    } else {
      CHECK(jet.coeff(static_cast<int>(k)) ==
            doctest::Approx(expected[k]).epsilon(tol).scale(1.0));
    }
  }
}

// local-coordinate polynomial oracle: coefficient vectors in x = t - t0
std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q, int order) {
  std::vector<double> out(order + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (i + j <= static_cast<std::size_t>(order)) out[i + j] += p[i] * q[j];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("variable jets") {
  check_coeffs(Jet::variable(2.0, 3), {2.0, 1.0, 0.0, 0.0});
  check_coeffs(Jet::variable(0.0, 0), {0.0});
  check_coeffs(Jet::variable(5.0, 1), {5.0, 1.0});
  CHECK_THROWS_AS(Jet::variable(1.0, -1), std::invalid_argument);
}

TEST_CASE("addition and multiplication") {
  Jet a(0.0, {1, 1});
  check_coeffs(a * a, {1, 2});

  Jet b(0.0, {1, 1, 0});
  check_coeffs(b * b, {1, 2, 1});  // (1+x)^2

  check_coeffs(Jet(0.0, {2, 0, 0}) + Jet(0.0, {0, 1, 0}), {2, 1, 0});

  CHECK_THROWS_AS(Jet(0.0, {1, 1}) + Jet(1.0, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Jet(0.0, {1, 1}) * Jet(1.0, {1, 1}), std::invalid_argument);
}

TEST_CASE("reciprocal") {
  check_coeffs(reciprocal(Jet(0.0, {2, 3, 0})), {0.5, -0.75, 1.125}, 1e-15);
  check_coeffs(reciprocal(Jet(0.0, {1, 0, 0})), {1, 0, 0});
  CHECK_THROWS_AS(reciprocal(Jet(0.0, {0, 1})), std::domain_error);
}

TEST_CASE("reciprocal is an involution") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> coeffs(6);
    for (double& c : coeffs) c = dist(rng);
    if (std::abs(coeffs[0]) < 0.1) coeffs[0] = 1.0 + coeffs[0];
    Jet a(0.5, coeffs);
    Jet round_trip = reciprocal(reciprocal(a));
    for (int k = 0; k <= a.order(); ++k) {
      CHECK(round_trip.coeff(k) ==
            doctest::Approx(a.coeff(k)).epsilon(1e-10).scale(std::abs(a.coeff(0)) + 1));
    }
  }
}

TEST_CASE("sin and cos") {
  auto [s, c] = sin_cos(Jet::variable(0.0, 3));
  check_coeffs(s, {0, 1, 0, -1.0 / 6}, 1e-15);
  check_coeffs(c, {1, 0, -0.5, 0}, 1e-15);

  SUBCASE("pythagorean identity order-wise") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> coeffs(5);
      for (double& x : coeffs) x = dist(rng);
      Jet g(1.0, coeffs);
      auto [sg, cg] = sin_cos(g);
      Jet unit = sg * sg + cg * cg;
      CHECK(unit.coeff(0) == doctest::Approx(1.0).epsilon(1e-13));
      for (int k = 1; k <= unit.order(); ++k) {
        CHECK(std::abs(unit.coeff(k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("exp") {
  check_coeffs(exp(Jet(0.0, {0, 0, 0})), {1, 0, 0});
  // exp(x) at 0: a_k = 1/k!
  Jet e = exp(Jet::variable(0.0, 4));
  check_coeffs(e, {1, 1, 0.5, 1.0 / 6, 1.0 / 24}, 1e-15);
}

TEST_CASE("pow") {
  // (1+x)^(1/2) Maclaurin: 1, 1/2, -1/8, 1/16
  Jet root = pow(Jet(0.0, {1, 1, 0, 0}), 0.5);
  check_coeffs(root, {1, 0.5, -0.125, 0.0625}, 1e-14);

  // integer exponents fall back to repeated multiplication, sign allowed
  check_coeffs(pow(Jet(0.0, {-2, 1, 0}), 2), {4, -4, 1}, 1e-15);
  check_coeffs(pow(Jet(0.0, {2, 1}), -1), {0.5, -0.25}, 1e-15);

  CHECK_THROWS_AS(pow(Jet(0.0, {-1, 1}), 0.5), std::domain_error);
  CHECK_THROWS_AS(pow(Jet(0.0, {0, 1}), 1.5), std::domain_error);
}

TEST_CASE("derivative") {
  check_coeffs(derivative(Jet(0.0, {5, 2, 3})), {2, 6});
  check_coeffs(derivative(Jet::variable(3.0, 2)), {1, 0});
  check_coeffs(derivative(Jet(0.0, {1, 1, 0.5, 1.0 / 6})), {1, 1, 0.5});
  CHECK_THROWS_AS(derivative(Jet(0.0, {1.0})), std::invalid_argument);
}

TEST_CASE("polynomial operations match hand expansion") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  const int order = 7;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(order + 1), q(order + 1);
    for (double& x : p) x = dist(rng);
    for (double& x : q) x = dist(rng);
    double t0 = dist(rng);
    Jet a(t0, p), b(t0, q);

    Jet sum = a + b;
    Jet prod = a * b;
    std::vector<double> prod_ref = poly_mul(p, q, order);
    for (int k = 0; k <= order; ++k) {
      CHECK(sum.coeff(k) == doctest::Approx(p[k] + q[k]).epsilon(1e-12).scale(1.0));
      CHECK(prod.coeff(k) == doctest::Approx(prod_ref[k]).epsilon(1e-12).scale(1.0));
    }

    // commutativity and associativity up to roundoff (summation order differs)
    Jet prod_rev = b * a;
    for (int k = 0; k <= order; ++k) {
      CHECK(prod.coeff(k) == doctest::Approx(prod_rev.coeff(k)).epsilon(1e-13).scale(1.0));
    }
    Jet left = (a * b) * a;
    Jet right = a * (b * a);
    for (int k = 0; k <= order; ++k) {
      CHECK(left.coeff(k) == doctest::Approx(right.coeff(k)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("derivatives of sin(t^2) agree with finite differences") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  auto f = [](double t) { return std::sin(t * t); };
  for (int trial = 0; trial < 20; ++trial) {
    double t0 = dist(rng);
    Jet x = Jet::variable(t0, 3);
    Jet s = sin_cos(x * x).first;

    double h = 1e-5;
    double fd1 = (f(t0 + h) - f(t0 - h)) / (2 * h);
    // truncation ~ h^2 |f'''| / 6 plus rounding
    double f3 = std::abs(s.derivative(3));
    CHECK(std::abs(s.derivative(1) - fd1) < h * h * (f3 + 1) + 1e-9);

    double h2 = 1e-4;
    double fd2 = (f(t0 + h2) - 2 * f(t0) + f(t0 - h2)) / (h2 * h2);
    CHECK(std::abs(s.derivative(2) - fd2) < 1e-4);
  }
}

TEST_CASE("truncation to the shorter operand") {
  Jet a(1.0, {1, 2, 3, 4});
  Jet b(1.0, {2, 1});
  CHECK((a * b).order() == 1);
  CHECK((a + b).order() == 1);
  CHECK(a.truncated(2).order() == 2);
  CHECK_THROWS_AS(a.truncated(5), std::invalid_argument);
}

TEST_CASE("non-finite coefficients are rejected") {
  CHECK_THROWS_AS(Jet(0.0, {1.0, std::numeric_limits<double>::infinity()}), std::domain_error);
  CHECK_THROWS_AS(Jet(0.0, {std::nan("")}), std::domain_error);
}
