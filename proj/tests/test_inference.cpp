#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "levycop/inference.hpp"
#include "levycop/simulation.hpp"

using namespace levycop;

TEST_CASE("cpp_loglik with no observations is the exponent only") {
  ObservationSet obs;
  obs.horizon = 3.0;
  const MarginalFamily f{FamilyTag::Gamma, 1.0, 1.0};
  const AlphaClaytonParams cop{0.5, 1.0, 1.0};
  const double lambda1 = 2.0, lambda2 = 1.5;
  const double lambda_par = alpha_clayton(cop, lambda1, lambda2);
  CHECK(cpp_loglik(obs, lambda1, lambda2, f, f, cop) ==
        doctest::Approx(-(lambda1 + lambda2 - lambda_par) * 3.0).epsilon(1e-12));
}

TEST_CASE("cpp_loglik exponent identity") {
  // lambda1_perp + lambda2_perp + lambda_par = lambda1 + lambda2 - C(lambda1, lambda2)
  const AlphaClaytonParams cop{0.8, 2.0, 0.5};
  const double lambda1 = 1.7, lambda2 = 0.9;
  const double lambda_par = alpha_clayton(cop, lambda1, lambda2);
  const double lhs = (lambda1 - lambda_par) + (lambda2 - lambda_par) + lambda_par;
  CHECK(lhs == doctest::Approx(lambda1 + lambda2 - lambda_par).epsilon(1e-14));
  CHECK(lambda_par <= std::min(lambda1, lambda2) + 1e-12);
}

TEST_CASE("cpp_loglik rejects bad inputs") {
  ObservationSet obs;
  obs.horizon = 1.0;
  const MarginalFamily f{FamilyTag::Gamma, 1.0, 1.0};
  CHECK_THROWS_AS(cpp_loglik(obs, 0.0, 1.0, f, f, {0.5, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(cpp_loglik(obs, 1.0, 1.0, f, f, {-0.5, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("threshold_loglik matches per-observation evaluation") {
  const CompoundModel m{{0.5, 1.0}, {1.0, 2.0}, {2.0, 1.0}};
  ObservationSet obs;
  obs.horizon = 10.0;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const double eps1 = 0.05, eps2 = 0.08;
  for (int i = 0; i < 50; ++i) {
    obs.parallel.emplace_back(eps1 + u(rng), eps2 + u(rng));
  }
  double by_hand = -bivariate_tail(m, eps1, eps2) * obs.horizon;
  for (const auto& [w1, w2] : obs.parallel) {
    by_hand += std::log(levy_intensity(m, w1, w2));
  }
  CHECK(threshold_loglik(obs, m, eps1, eps2) ==
        doctest::Approx(by_hand).epsilon(1e-10));

  ObservationSet below = obs;
  below.parallel.emplace_back(eps1 / 2.0, 1.0);
  CHECK_THROWS_AS(threshold_loglik(below, m, eps1, eps2), std::domain_error);
}

TEST_CASE("threshold_loglik empty set is the exponent only") {
  const CompoundModel m{{0.5, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  ObservationSet obs;
  obs.horizon = 4.0;
  CHECK(threshold_loglik(obs, m, 0.1, 0.2) ==
        doctest::Approx(-bivariate_tail(m, 0.1, 0.2) * 4.0).epsilon(1e-12));
}

TEST_CASE("rate estimates") {
  ObservationSet obs;
  obs.horizon = 2.0;
  obs.perp1 = {1.0, 1.0, 1.0};
  obs.perp2 = {1.0};
  obs.parallel = {{1.0, 1.0}, {2.0, 2.0}};
  const auto [l1, l2] = rate_estimates(obs);
  CHECK(l1 == doctest::Approx(2.5));
  CHECK(l2 == doctest::Approx(1.5));
}

TEST_CASE("fit_marginal recovers Gamma parameters") {
  std::mt19937_64 rng(101);
  const MarginalFamily truth{FamilyTag::Gamma, 2.5, 1.4};
  std::vector<double> sample(5000);
  for (double& w : sample) w = truth.sample(rng);
  const FitResult fit = fit_marginal(sample, FamilyTag::Gamma);
  CHECK(fit.converged);
  CHECK(fit.params.at("shape") == doctest::Approx(2.5).epsilon(0.05));
  CHECK(fit.params.at("rate") == doctest::Approx(1.4).epsilon(0.05));
}

TEST_CASE("fit_marginal LogNormal matches the closed-form MLE") {
  std::mt19937_64 rng(202);
  const MarginalFamily truth{FamilyTag::LogNormal, 0.3, 0.9};
  std::vector<double> sample(2000);
  for (double& w : sample) w = truth.sample(rng);
  double mu = 0.0;
  for (double w : sample) mu += std::log(w);
  mu /= static_cast<double>(sample.size());
  double s2 = 0.0;
  for (double w : sample) s2 += (std::log(w) - mu) * (std::log(w) - mu);
  s2 /= static_cast<double>(sample.size());
  const FitResult fit = fit_marginal(sample, FamilyTag::LogNormal);
  CHECK(fit.converged);
  CHECK(fit.params.at("mu") == doctest::Approx(mu).epsilon(1e-4));
  CHECK(fit.params.at("sigma_log") == doctest::Approx(std::sqrt(s2)).epsilon(1e-4));
}

TEST_CASE("fit_marginal degenerate input") {
  CHECK_THROWS_AS(fit_marginal({1.0}, FamilyTag::Gamma), std::domain_error);
  CHECK_THROWS_AS(fit_marginal({1.0, -1.0}, FamilyTag::Gamma), std::domain_error);
  // near-constant data must not crash
  const FitResult fit = fit_marginal({1.0, 1.0, 1.0, 1.0 + 1e-9}, FamilyTag::Gamma);
  CHECK(std::isfinite(fit.loglik));
}

TEST_CASE("select_marginal picks the generating family") {
  std::mt19937_64 rng(303);
  const MarginalFamily weib{FamilyTag::Weibull, 2.2, 1.5};
  std::vector<double> sample(3000);
  for (double& w : sample) w = weib.sample(rng);
  const MarginalSelection sel = select_marginal(sample);
  CHECK(sel.family.tag == FamilyTag::Weibull);
  CHECK(sel.ks < 0.03);
}

TEST_CASE("two-step copula fit recovers sigma") {
  const MarginalFamily f{FamilyTag::Gamma, 2.0, 1.0};
  const AlphaClaytonParams truth{0.7, 1.0, 1.0};
  auto obs = classify(
      compound_poisson_sample(2.0, 2.0, f, f, truth, 1500.0, {404}));
  const auto [l1, l2] = rate_estimates(obs);
  const FitResult fit =
      fit_copula_two_step(obs, f, f, l1, l2, CopulaVariant::clayton);
  CHECK(fit.converged);
  CHECK(fit.params.at("sigma") == doctest::Approx(0.7).epsilon(0.15));
  CHECK(fit.fixed.at("alpha1") == 1.0);
  CHECK(fit.fixed.at("lambda1") == doctest::Approx(l1));
}

TEST_CASE("loglik report respects nesting") {
  const MarginalFamily f{FamilyTag::Gamma, 2.0, 1.0};
  const AlphaClaytonParams truth{0.6, 2.0, 0.8};
  auto obs = classify(
      compound_poisson_sample(1.5, 1.5, f, f, truth, 600.0, {505}));
  const auto [l1, l2] = rate_estimates(obs);
  const LoglikReport report = loglik_report(obs, f, f, l1, l2);
  CHECK(report.full.loglik >= report.symmetric.loglik - 1e-6);
  CHECK(report.symmetric.loglik >= report.clayton.loglik - 1e-6);
}

TEST_CASE("cpp_loglik is invariant to observation order") {
  const MarginalFamily f{FamilyTag::Gamma, 2.0, 1.0};
  const AlphaClaytonParams cop{0.5, 1.5, 0.9};
  auto obs = classify(compound_poisson_sample(1.0, 1.0, f, f, cop, 50.0, {606}));
  ObservationSet shuffled = obs;
  std::mt19937_64 rng(1);
  std::shuffle(shuffled.perp1.begin(), shuffled.perp1.end(), rng);
  std::shuffle(shuffled.perp2.begin(), shuffled.perp2.end(), rng);
  std::shuffle(shuffled.parallel.begin(), shuffled.parallel.end(), rng);
  CHECK(cpp_loglik(obs, 1.0, 1.0, f, f, cop) ==
        doctest::Approx(cpp_loglik(shuffled, 1.0, 1.0, f, f, cop)).epsilon(1e-12));
}

TEST_CASE("fit_threshold_model runs on simulated data") {
  const CompoundModel truth{{0.5, 1.0}, {1.0, 2.0}, {2.0, 1.0}};
  auto path = compound_path(truth, 20.0, {1e-6}, {707});
  auto obs = threshold_observations(path, 1e-4, 1e-4);
  REQUIRE(obs.parallel.size() > 50);
  const FitResult fit = fit_threshold_model(obs, 1e-4, 1e-4);
  CHECK(std::isfinite(fit.loglik));
  CHECK(fit.fixed.at("K") == 1.0);
  CHECK(fit.params.at("sigma") > 0.0);
  CHECK(fit.params.at("sigma") < 1.0);
  // the fitted loglik is at least the starting point's
  const CompoundModel start{{0.5, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  CHECK(fit.loglik >= threshold_loglik(obs, start, 1e-4, 1e-4) - 1e-6);
}
