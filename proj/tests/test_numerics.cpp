#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "wavelab/fit.hpp"
#include "wavelab/quadrature.hpp"

using namespace wavelab;

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 4, 8, 16}) {
    const auto& rule = gauss_legendre(n);
    REQUIRE(rule.size() == n);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(q - exact) < 1e-14);
    }
  }
  CHECK(&gauss_legendre(8) == &gauss_legendre(8));
}

TEST_CASE("composite rule converges on smooth integrands") {
  const auto& rule = gauss_legendre(8);
  const double v = integrate_composite([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 4, rule);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_composite([](double) { return 1.0; }, 1.0, 1.0, 3, rule) == 0.0);
}

TEST_CASE("pairwise sum is exact on integers and independent of chunking") {
  std::vector<double> xs(1001);
  std::iota(xs.begin(), xs.end(), 1.0);
  CHECK(pairwise_sum(xs) == 1001.0 * 1002.0 / 2.0);
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> r(12345);
  for (auto& x : r) x = U(rng);
  const double a = pairwise_sum(r);
  const double b = pairwise_sum(std::vector<double>(r));
  CHECK(a == b);
  long double ref = 0.0L;
  for (double x : r) ref += x;
  CHECK(std::abs(a - static_cast<double>(ref)) < 1e-12);
}

TEST_CASE("power-law fit recovers exact exponents") {
  std::vector<double> xs{1, 2, 4, 8, 16};
  std::vector<double> sq, dec;
  for (double x : xs) {
    sq.push_back(x * x);
    dec.push_back(3.0 * std::pow(x, -1.5));
  }
  const auto f = fit_power_law(xs, sq);
  CHECK(std::abs(f.slope - 2.0) < 1e-12);
  CHECK(std::abs(f.r_squared - 1.0) < 1e-12);
  CHECK(std::abs(f.intercept) < 1e-12);
  const auto g = fit_power_law(xs, dec);
  CHECK(std::abs(g.slope + 1.5) < 1e-12);
  CHECK(std::abs(g.intercept - std::log(3.0)) < 1e-12);
}

TEST_CASE("power-law fit rejects degenerate input") {
  std::vector<double> two{1, 2}, y2{1, 4};
  CHECK_THROWS_AS(fit_power_law(two, y2), std::domain_error);
  std::vector<double> xs{1, 2, 3}, ys{1, 0, 3};
  CHECK_THROWS_AS(fit_power_law(xs, ys), std::domain_error);
  std::vector<double> ys_neg{1, -2, 3};
  CHECK_THROWS_AS(fit_power_law(xs, ys_neg), std::domain_error);
}
