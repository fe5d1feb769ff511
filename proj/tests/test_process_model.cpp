#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "levycop/numerics.hpp"
#include "levycop/process_model.hpp"

using namespace levycop;

namespace {

const CompoundModel kModel{{0.5, 1.0}, {1.0, 2.0}, {2.0, 1.0}};

// Definition-style intensity: integral over the directing variable of the
// scaled score densities, evaluated by quadrature. Independent oracle for the
// closed form.
double intensity_by_quadrature(const CompoundModel& m, double s1, double s2) {
  const double sigma = m.directing.sigma;
  const double k = m.directing.k;
  auto gamma_pdf = [](const GammaScore& g, double x) {
    return std::exp(g.alpha * std::log(g.beta) + (g.alpha - 1.0) * std::log(x) -
                    g.beta * x - log_gamma(g.alpha));
  };
  auto integrand = [&](double z) {
    const double f1 = gamma_pdf(m.score1, s1 / z) / z;
    const double f2 = gamma_pdf(m.score2, s2 / z) / z;
    return f1 * f2 * sigma * k * std::pow(z, -sigma - 1.0);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 1e-10;
  return integrate_semi_infinite(integrand, spec);
}

}  // namespace

TEST_CASE("levy_intensity matches its integral definition") {
  for (double s1 : {0.3, 1.0, 2.5}) {
    for (double s2 : {0.4, 1.7}) {
      const double closed = levy_intensity(kModel, s1, s2);
      const double quad = intensity_by_quadrature(kModel, s1, s2);
      CHECK(closed == doctest::Approx(quad).epsilon(1e-7));
    }
  }
}

TEST_CASE("levy_intensity validates inputs") {
  CHECK_THROWS_AS(levy_intensity(kModel, 0.0, 1.0), std::domain_error);
  CompoundModel bad = kModel;
  bad.directing.sigma = 1.5;
  CHECK_THROWS_AS(levy_intensity(bad, 1.0, 1.0), std::domain_error);
}

TEST_CASE("marginal tail integrates the marginal intensity") {
  for (int dim : {1, 2}) {
    for (double y : {0.5, 1.0, 3.0}) {
      // substitute s = y + v^2 so the s^{-sigma-1} tail is regular at infinity
      const double by_quad = integrate_semi_infinite([dim, y](double v) {
        return 2.0 * v * marginal_intensity(kModel, dim, y + v * v);
      });
      CHECK(marginal_tail(kModel, dim, y) ==
            doctest::Approx(by_quad).epsilon(1e-8));
    }
  }
}

TEST_CASE("stable marginal coefficient closed form") {
  // K_i = K beta_i^{-sigma} Gamma(alpha_i + sigma) / Gamma(alpha_i)
  const double k1 = stable_marginal_coefficient(kModel, 1);
  const double expect1 = 1.0 * std::pow(2.0, -0.5) * gamma_ratio(1.0, 0.5);
  CHECK(k1 == doctest::Approx(expect1).epsilon(1e-12));
  const double k2 = stable_marginal_coefficient(kModel, 2);
  const double expect2 = 1.0 * std::pow(1.0, -0.5) * gamma_ratio(2.0, 0.5);
  CHECK(k2 == doctest::Approx(expect2).epsilon(1e-12));
}

TEST_CASE("marginal tail inverse round trip") {
  for (int dim : {1, 2}) {
    for (double y : {0.1, 1.0, 10.0}) {
      const double u = marginal_tail(kModel, dim, y);
      CHECK(marginal_tail_inverse(kModel, dim, u) == doctest::Approx(y).epsilon(1e-12));
    }
    for (double u : {0.01, 1.0, 50.0}) {
      const double y = marginal_tail_inverse(kModel, dim, u);
      CHECK(marginal_tail(kModel, dim, y) == doctest::Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("bivariate tail limits and symmetry") {
  // y2 -> 0 recovers the first marginal tail; likewise for y1 -> 0
  CHECK(bivariate_tail(kModel, 1.0, 1e-9) ==
        doctest::Approx(marginal_tail(kModel, 1, 1.0)).epsilon(1e-6));
  CHECK(bivariate_tail(kModel, 1e-9, 1.0) ==
        doctest::Approx(marginal_tail(kModel, 2, 1.0)).epsilon(1e-6));

  // swapping both the scores and the arguments leaves the tail unchanged
  CompoundModel swapped{kModel.directing, kModel.score2, kModel.score1};
  for (double y1 : {0.4, 1.3}) {
    for (double y2 : {0.8, 2.2}) {
      CHECK(bivariate_tail(kModel, y1, y2) ==
            doctest::Approx(bivariate_tail(swapped, y2, y1)).epsilon(1e-12));
    }
  }

  // decreasing in each argument
  CHECK(bivariate_tail(kModel, 1.0, 1.0) > bivariate_tail(kModel, 2.0, 1.0));
  CHECK(bivariate_tail(kModel, 1.0, 1.0) > bivariate_tail(kModel, 1.0, 2.0));
}

TEST_CASE("bivariate tail against 2-d quadrature of the intensity") {
  // U(y1, y2) = integral of the intensity over [y1, inf) x [y2, inf). The
  // inner variable is rescaled by max(s1, y2) because the conditional s2 mass
  // sits near s2 ~ s1; the outer uses s1 = y1 + v^2 to regularize the
  // s1^{-sigma-1} tail at sigma = 0.5.
  auto tail_by_quadrature = [](const CompoundModel& m, double y1, double y2) {
    QuadratureSpec inner;
    inner.abs_tol = 1e-16;
    inner.rel_tol = 1e-10;
    auto inner_int = [&](double s1) {
      const double c = std::max(s1, y2);
      return integrate_semi_infinite(
          [&](double u) { return c * levy_intensity(m, s1, y2 + c * u); }, inner);
    };
    QuadratureSpec outer;
    outer.abs_tol = 1e-12;
    outer.rel_tol = 1e-9;
    return integrate_semi_infinite(
        [&](double v) { return 2.0 * v * inner_int(y1 + v * v); }, outer);
  };
  for (double y1 : {0.7, 1.5}) {
    for (double y2 : {0.9, 2.0}) {
      CHECK(bivariate_tail(kModel, y1, y2) ==
            doctest::Approx(tail_by_quadrature(kModel, y1, y2)).epsilon(1e-8));
    }
  }
}

TEST_CASE("well-posedness") {
  CHECK(well_posed(GammaScore{1.0, 2.0}, GammaScore{3.0, 0.5}));
  CHECK(well_posed(true, true));
  CHECK_FALSE(well_posed(true, false));
  CHECK_FALSE(well_posed(false, true));
}

TEST_CASE("moments of the Gamma-directed compound vector") {
  const MomentModel m{{2.0, 3.0}, {1.0, 2.0}, {10.0, 1.0}};
  const double t = 4.0;
  // mean_i = (t a / b) alpha_i / beta_i
  CHECK(mean(m, 1, t) == doctest::Approx((t * 2.0 / 3.0) * 0.5).epsilon(1e-12));
  CHECK(mean(m, 2, t) == doctest::Approx((t * 2.0 / 3.0) * 10.0).epsilon(1e-12));
  // var_i = (t a / b^2) alpha_i (alpha_i + 1) / beta_i^2
  CHECK(variance(m, 1, t) ==
        doctest::Approx((t * 2.0 / 9.0) * 1.0 * 2.0 / 4.0).epsilon(1e-12));
  CHECK(variance(m, 2, t) ==
        doctest::Approx((t * 2.0 / 9.0) * 10.0 * 11.0).epsilon(1e-12));
  // cov = (t a / b^2) (alpha1 / beta1)(alpha2 / beta2)
  CHECK(covariance(m, t) ==
        doctest::Approx((t * 2.0 / 9.0) * 0.5 * 10.0).epsilon(1e-12));
  // corr = sqrt(alpha1 alpha2 / ((alpha1 + 1)(alpha2 + 1))), free of a, b, t
  CHECK(correlation(m) == doctest::Approx(std::sqrt(10.0 / 22.0)).epsilon(1e-12));
  CHECK(correlation(m) == doctest::Approx(0.67420).epsilon(1e-4));
  // correlation does not depend on the directing parameters
  const MomentModel m2{{5.5, 0.1}, m.score1, m.score2};
  CHECK(correlation(m2) == doctest::Approx(correlation(m)).epsilon(1e-14));
  // consistency: cov / sqrt(var1 var2) equals the closed-form correlation
  CHECK(covariance(m, t) / std::sqrt(variance(m, 1, t) * variance(m, 2, t)) ==
        doctest::Approx(correlation(m)).epsilon(1e-12));
}

TEST_CASE("fractional moment closed form vs integral representation") {
  for (double p : {0.1, 0.25, 0.45}) {
    for (int dim : {1, 2}) {
      const double closed = fractional_moment_stable(kModel, dim, 2.0, p);
      const double quad = fractional_moment_integral(kModel, dim, 2.0, p);
      CHECK(closed == doctest::Approx(quad).epsilon(1e-7));
    }
  }
}

TEST_CASE("fractional moment pinned value") {
  // sigma = 0.5, K = 1, Gamma(1, 2) scores, t = 1, p = 0.49:
  // E[W^0.5] = Gamma(1.5) / sqrt(2), E[Y^p] = (t K E[W^0.5])^{p/sigma}
  //   Gamma(1 - p/sigma) / Gamma(1 - p)
  const CompoundModel m{{0.5, 1.0}, {1.0, 2.0}, {1.0, 2.0}};
  const double p = 0.49;
  const double ew = std::exp(log_gamma(1.5)) / std::sqrt(2.0);
  const double expect = std::pow(ew, p / 0.5) *
                        std::exp(log_gamma(1.0 - p / 0.5) - log_gamma(1.0 - p));
  CHECK(fractional_moment_stable(m, 1, 1.0, p) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(17.99).epsilon(5e-3));
  CHECK_THROWS_AS(fractional_moment_stable(m, 1, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(fractional_moment_stable(m, 1, 1.0, -0.1), std::domain_error);
}
