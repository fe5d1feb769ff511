#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "levycop/numerics.hpp"

using namespace levycop;

TEST_CASE("log_gamma at exact values") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.0), std::domain_error);
}

TEST_CASE("log_gamma recurrence over a wide range") {
  for (double x : {1e-6, 1e-3, 0.3, 1.5, 12.0, 250.0, 1e4, 1e6}) {
    const double lhs = log_gamma(x + 1.0);
    const double rhs = log_gamma(x) + std::log(x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("gamma_ratio") {
  CHECK(gamma_ratio(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(gamma_ratio(1.0, 0.5) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
  // Gamma(10.5)/Gamma(10) = 9.5 * 8.5 * ... * 0.5 * sqrt(pi) / 9!
  double g105 = std::sqrt(M_PI);
  for (double k = 0.5; k <= 9.5; k += 1.0) g105 *= k;
  CHECK(gamma_ratio(10.0, 0.5) ==
        doctest::Approx(g105 / 362880.0).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_ratio(-1.0, 0.5), std::domain_error);

  // composition property: ratio(a, s) * ratio(a+s, t) = ratio(a, s+t)
  for (double a : {0.1, 1.0, 7.5, 120.0}) {
    for (double s : {0.25, 0.5, 2.0}) {
      for (double t : {0.3, 1.7}) {
        CHECK(gamma_ratio(a, s) * gamma_ratio(a + s, t) ==
              doctest::Approx(gamma_ratio(a, s + t)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("reg_inc_beta endpoints and analytic cases") {
  CHECK(reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
  CHECK(reg_inc_beta(0.5, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  // I(x, 1, b) = 1 - (1-x)^b
  CHECK(reg_inc_beta(0.25, 1.0, 2.0) == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK_THROWS_AS(reg_inc_beta(1.5, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(0.5, -1.0, 1.0), std::domain_error);
}

TEST_CASE("reg_inc_beta symmetry and monotonicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::uniform_real_distribution<double> up(0.1, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng);
    const double a = up(rng);
    const double b = up(rng);
    CHECK(reg_inc_beta(x, a, b) + reg_inc_beta(1.0 - x, b, a) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  const double a = 2.7, b = 0.9;
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double cur = reg_inc_beta(i / 100.0, a, b);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("reg_inc_gamma basics") {
  // P(1, x) = 1 - e^{-x}
  CHECK(reg_inc_gamma(1.0, 0.7) == doctest::Approx(-std::expm1(-0.7)).epsilon(1e-12));
  CHECK(reg_inc_gamma(3.5, 0.0) == 0.0);
  CHECK(reg_inc_gamma(2.0, 1e3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate_semi_infinite standard integrals") {
  CHECK(integrate_semi_infinite([](double u) { return std::exp(-u); }) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate_semi_infinite([](double u) { return u * std::exp(-0.5 * u * u); }) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // sigma K u^{sigma-1} e^{-u^sigma} integrates to 1
  const double sigma = 0.5;
  CHECK(integrate_semi_infinite([sigma](double u) {
          return sigma * std::pow(u, sigma - 1.0) * std::exp(-std::pow(u, sigma));
        }) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("integrate_semi_infinite reproduces Gamma(c)") {
  for (double c : {0.5, 1.0, 2.5}) {
    const double value = integrate_semi_infinite(
        [c](double u) { return std::pow(u, c - 1.0) * std::exp(-u); });
    CHECK(value == doctest::Approx(std::exp(log_gamma(c))).epsilon(1e-8));
  }
}

TEST_CASE("integrate reports non-convergence") {
  QuadratureSpec tight;
  tight.abs_tol = 1e-300;
  tight.rel_tol = 1e-16;
  tight.max_subdivisions = 2;
  CHECK_THROWS_AS(
      integrate([](double x) { return std::sin(200.0 * x) * std::exp(x); }, 0.0, 10.0, tight),
      std::runtime_error);
}

TEST_CASE("nelder_mead on standard problems") {
  OptimizerSpec spec;
  auto quad1 = [](const std::vector<double>& x) { return (x[0] - 3.0) * (x[0] - 3.0); };
  auto r1 = nelder_mead(quad1, {0.0}, spec);
  CHECK(r1.converged);
  CHECK(r1.x[0] == doctest::Approx(3.0).epsilon(1e-5));

  auto bowl = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
  auto r2 = nelder_mead(bowl, {1.0, 1.0}, spec);
  CHECK(r2.converged);
  CHECK(std::fabs(r2.x[0]) < 1e-5);
  CHECK(std::fabs(r2.x[1]) < 1e-5);

  auto rosen = [](const std::vector<double>& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  OptimizerSpec long_spec;
  long_spec.max_iters = 20000;
  auto r3 = nelder_mead(rosen, {-1.2, 1.0}, long_spec);
  CHECK(r3.converged);
  CHECK(r3.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r3.x[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("nelder_mead translation invariance and error handling") {
  OptimizerSpec spec;
  auto f = [](const std::vector<double>& x) { return (x[0] - 2.0) * (x[0] - 2.0); };
  auto g = [&f](const std::vector<double>& x) { return f(x) + 7.0; };
  auto rf = nelder_mead(f, {0.3}, spec);
  auto rg = nelder_mead(g, {0.3}, spec);
  CHECK(rf.x[0] == doctest::Approx(rg.x[0]).epsilon(1e-8));

  auto nan_at_start = [](const std::vector<double>&) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(nelder_mead(nan_at_start, {0.0}, spec), std::domain_error);

  OptimizerSpec stingy;
  stingy.max_iters = 2;
  auto r = nelder_mead(f, {100.0}, stingy);
  CHECK_FALSE(r.converged);
}

TEST_CASE("ecdf counting") {
  Ecdf e({1.0, 2.0, 3.0});
  CHECK(e(2.0) == doctest::Approx(2.0 / 3.0));
  Ecdf single({5.0});
  CHECK(single(4.9) == 0.0);
  Ecdf ties({1.0, 1.0, 2.0});
  CHECK(ties(1.0) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(Ecdf(std::vector<double>{}), std::domain_error);
}

TEST_CASE("ks_distance") {
  CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));

  const int n = 20;
  std::vector<double> quantiles;
  for (int i = 1; i <= n; ++i) quantiles.push_back((i - 0.5) / n);
  CHECK(ks_distance(quantiles, [](double x) { return x; }) ==
        doctest::Approx(0.5 / n).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> draws(1000);
  for (double& d : draws) d = u(rng);
  CHECK(ks_distance(draws, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.06);
}
