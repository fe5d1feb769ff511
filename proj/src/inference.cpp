#include "levycop/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace levycop {

namespace {

double checked_log(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::domain_error(std::string("cpp_loglik: nonpositive ") + what);
  }
  return std::log(v);
}

}  // namespace

std::string fit_result_json(const FitResult& fit) {
  nlohmann::json j;
  j["params"] = fit.params;
  j["loglik"] = fit.loglik;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["fixed"] = fit.fixed;
  return j.dump(2);
}

double cpp_loglik(const ObservationSet& obs, double lambda1, double lambda2,
                  const MarginalFamily& m1, const MarginalFamily& m2,
                  const AlphaClaytonParams& cop) {
  obs.validate();
  m1.validate();
  m2.validate();
  cop.validate();
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::domain_error("cpp_loglik: rates must be positive");
  }

  const double lambda_par = alpha_clayton(cop, lambda1, lambda2);
  double ll = -(lambda1 + lambda2 - lambda_par) * obs.horizon;

  ll += static_cast<double>(obs.perp1.size()) * std::log(lambda1);
  for (double w : obs.perp1) {
    const double u1 = lambda1 * m1.survival(w);
    ll += m1.log_pdf(w);
    ll += checked_log(1.0 - alpha_clayton_d1(cop, u1, lambda2), "perp1 copula factor");
  }

  ll += static_cast<double>(obs.perp2.size()) * std::log(lambda2);
  for (double w : obs.perp2) {
    const double u2 = lambda2 * m2.survival(w);
    ll += m2.log_pdf(w);
    ll += checked_log(1.0 - alpha_clayton_d2(cop, lambda1, u2), "perp2 copula factor");
  }

  ll += static_cast<double>(obs.parallel.size()) * std::log(lambda1 * lambda2);
  for (const auto& [w1, w2] : obs.parallel) {
    const double u1 = lambda1 * m1.survival(w1);
    const double u2 = lambda2 * m2.survival(w2);
    ll += m1.log_pdf(w1) + m2.log_pdf(w2);
    ll += checked_log(alpha_clayton_density(cop, u1, u2), "parallel copula density");
  }
  return ll;
}

double threshold_loglik(const ObservationSet& obs, const CompoundModel& m,
                        double eps1, double eps2) {
  obs.validate();
  m.validate();
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw std::domain_error("threshold_loglik: thresholds must be positive");
  }
  for (const auto& [w1, w2] : obs.parallel) {
    if (!(w1 > eps1) || !(w2 > eps2)) {
      throw std::domain_error("threshold_loglik: observation below threshold");
    }
  }
  // Factored sum of log intensities: the parameter-only constant is computed
  // once, the data enter through three log sums.
  const double sigma = m.directing.sigma;
  const double a1 = m.score1.alpha, b1 = m.score1.beta;
  const double a2 = m.score2.alpha, b2 = m.score2.beta;
  const double n = static_cast<double>(obs.parallel.size());
  const double log_const =
      std::log(sigma) + std::log(m.directing.k) + a1 * std::log(b1) + a2 * std::log(b2) +
      log_gamma(a1 + a2 + sigma) - log_gamma(a1) - log_gamma(a2);

  double sum_log_w1 = 0.0, sum_log_w2 = 0.0, sum_log_mix = 0.0;
  for (const auto& [w1, w2] : obs.parallel) {
    sum_log_w1 += std::log(w1);
    sum_log_w2 += std::log(w2);
    sum_log_mix += std::log(b1 * w1 + b2 * w2);
  }

  return -bivariate_tail(m, eps1, eps2) * obs.horizon + n * log_const +
         (a1 - 1.0) * sum_log_w1 + (a2 - 1.0) * sum_log_w2 -
         (a1 + a2 + sigma) * sum_log_mix;
}

std::pair<double, double> rate_estimates(const ObservationSet& obs) {
  obs.validate();
  const double n_par = static_cast<double>(obs.parallel.size());
  return {(static_cast<double>(obs.perp1.size()) + n_par) / obs.horizon,
          (static_cast<double>(obs.perp2.size()) + n_par) / obs.horizon};
}

namespace {

constexpr double kBigPenalty = 1e30;
constexpr int kRestarts = 3;

double neg_loglik_family(const std::vector<double>& weights, const MarginalFamily& f) {
  double ll = 0.0;
  for (double w : weights) ll += f.log_pdf(w);
  return -ll;
}

MarginalFamily family_from_vector(FamilyTag tag, const std::vector<double>& x) {
  if (tag == FamilyTag::LogNormal) {
    return {tag, x[0], std::exp(x[1])};
  }
  return {tag, std::exp(x[0]), std::exp(x[1])};
}

std::vector<double> family_start(FamilyTag tag, const std::vector<double>& weights) {
  const double n = static_cast<double>(weights.size());
  const double mean = std::accumulate(weights.begin(), weights.end(), 0.0) / n;
  double var = 0.0;
  for (double w : weights) var += (w - mean) * (w - mean);
  var /= std::max(n - 1.0, 1.0);
  switch (tag) {
    case FamilyTag::Gamma: {
      const double shape = var > 0.0 ? mean * mean / var : 1.0;
      const double rate = var > 0.0 ? mean / var : 1.0;
      return {std::log(std::max(shape, 1e-8)), std::log(std::max(rate, 1e-8))};
    }
    case FamilyTag::LogNormal: {
      double lmean = 0.0;
      for (double w : weights) lmean += std::log(w);
      lmean /= n;
      double lvar = 0.0;
      for (double w : weights) lvar += (std::log(w) - lmean) * (std::log(w) - lmean);
      lvar /= n;
      return {lmean, 0.5 * std::log(std::max(lvar, 1e-12))};
    }
    case FamilyTag::Weibull:
      return {0.0, std::log(std::max(mean, 1e-8))};
  }
  throw std::logic_error("family_start: unknown tag");
}

// Multi-start Nelder-Mead on a penalized objective; restarts perturb the best
// point so far.
NelderMeadResult multistart_nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start, const OptimizerSpec& spec) {
  NelderMeadResult best = nelder_mead(objective, start, spec);
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> perturb(0.0, 0.25);
  for (int r = 0; r < kRestarts; ++r) {
    std::vector<double> x = best.x;
    for (double& xi : x) xi += perturb(rng);
    if (!std::isfinite(objective(x))) continue;
    NelderMeadResult candidate = nelder_mead(objective, x, spec);
    if (candidate.f < best.f) {
      candidate.iterations += best.iterations;
      best = candidate;
    }
  }
  return best;
}

}  // namespace

FitResult fit_marginal(const std::vector<double>& weights, FamilyTag family) {
  if (weights.size() < 2) {
    throw std::domain_error("fit_marginal: need at least two weights");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::domain_error("fit_marginal: weights must be positive");
  }
  auto objective = [&weights, family](const std::vector<double>& x) {
    const MarginalFamily f = family_from_vector(family, x);
    const double nll = neg_loglik_family(weights, f);
    return std::isfinite(nll) ? nll : kBigPenalty;
  };
  OptimizerSpec spec;
  spec.initial_step = 0.25;
  spec.f_tol = 1e-9;
  spec.x_tol = 1e-7;
  spec.max_iters = 2000;

  NelderMeadResult opt = multistart_nelder_mead(objective, family_start(family, weights), spec);
  const MarginalFamily fitted = family_from_vector(family, opt.x);

  FitResult fit;
  fit.loglik = -opt.f;
  fit.converged = opt.converged && std::isfinite(fit.loglik);
  fit.iterations = opt.iterations;
  switch (family) {
    case FamilyTag::Gamma:
      fit.params = {{"shape", fitted.p1}, {"rate", fitted.p2}};
      break;
    case FamilyTag::LogNormal:
      fit.params = {{"mu", fitted.p1}, {"sigma_log", fitted.p2}};
      break;
    case FamilyTag::Weibull:
      fit.params = {{"shape", fitted.p1}, {"scale", fitted.p2}};
      break;
  }
  return fit;
}

MarginalSelection select_marginal(const std::vector<double>& weights,
                                  const std::vector<FamilyTag>& candidates) {
  if (candidates.empty()) {
    throw std::domain_error("select_marginal: no candidate families");
  }
  std::optional<MarginalSelection> best;
  for (FamilyTag tag : candidates) {
    FitResult fit = fit_marginal(weights, tag);
    MarginalFamily family{tag, 0.0, 0.0};
    if (tag == FamilyTag::Gamma) {
      family.p1 = fit.params.at("shape");
      family.p2 = fit.params.at("rate");
    } else if (tag == FamilyTag::LogNormal) {
      family.p1 = fit.params.at("mu");
      family.p2 = fit.params.at("sigma_log");
    } else {
      family.p1 = fit.params.at("shape");
      family.p2 = fit.params.at("scale");
    }
    const double ks = ks_distance(weights, [&family](double x) { return family.cdf(x); });
    if (!best || ks < best->ks) {
      best = MarginalSelection{family, std::move(fit), ks};
    }
  }
  return *best;
}

AlphaClaytonParams copula_params(const FitResult& fit) {
  auto get = [&fit](const std::string& name) {
    if (auto it = fit.params.find(name); it != fit.params.end()) return it->second;
    return fit.fixed.at(name);
  };
  return {get("sigma"), get("alpha1"), get("alpha2")};
}

FitResult fit_copula_two_step(const ObservationSet& obs, const MarginalFamily& m1,
                              const MarginalFamily& m2, double lambda1, double lambda2,
                              CopulaVariant variant,
                              std::optional<AlphaClaytonParams> start) {
  obs.validate();
  if (obs.parallel.empty()) {
    throw std::domain_error("fit_copula_two_step: need at least one parallel jump");
  }

  const AlphaClaytonParams s0 = start.value_or(AlphaClaytonParams{0.5, 1.0, 1.0});

  auto to_params = [variant](const std::vector<double>& x) -> AlphaClaytonParams {
    switch (variant) {
      case CopulaVariant::full:
        return {std::exp(x[0]), std::exp(x[1]), std::exp(x[2])};
      case CopulaVariant::symmetric:
        return {std::exp(x[0]), std::exp(x[1]), std::exp(x[1])};
      case CopulaVariant::clayton:
        return {std::exp(x[0]), 1.0, 1.0};
    }
    throw std::logic_error("fit_copula_two_step: unknown variant");
  };

  std::vector<double> x0;
  switch (variant) {
    case CopulaVariant::full:
      x0 = {std::log(s0.sigma), std::log(s0.alpha1), std::log(s0.alpha2)};
      break;
    case CopulaVariant::symmetric:
      x0 = {std::log(s0.sigma), std::log(std::sqrt(s0.alpha1 * s0.alpha2))};
      break;
    case CopulaVariant::clayton:
      x0 = {std::log(s0.sigma)};
      break;
  }

  auto objective = [&](const std::vector<double>& x) {
    try {
      const double ll = cpp_loglik(obs, lambda1, lambda2, m1, m2, to_params(x));
      return std::isfinite(ll) ? -ll : kBigPenalty;
    } catch (const std::domain_error&) {
      return kBigPenalty;
    } catch (const std::runtime_error&) {
      return kBigPenalty;
    }
  };

  OptimizerSpec spec;
  spec.initial_step = 0.25;
  spec.f_tol = 1e-8;
  spec.x_tol = 1e-6;
  spec.max_iters = 2000;
  NelderMeadResult opt = multistart_nelder_mead(objective, x0, spec);

  const AlphaClaytonParams fitted = to_params(opt.x);
  FitResult fit;
  fit.loglik = -opt.f;
  fit.converged = opt.converged && std::isfinite(fit.loglik);
  fit.iterations = opt.iterations;
  fit.params["sigma"] = fitted.sigma;
  if (variant == CopulaVariant::clayton) {
    fit.fixed["alpha1"] = 1.0;
    fit.fixed["alpha2"] = 1.0;
  } else {
    fit.params["alpha1"] = fitted.alpha1;
    fit.params["alpha2"] = fitted.alpha2;
  }
  fit.fixed["lambda1"] = lambda1;
  fit.fixed["lambda2"] = lambda2;
  return fit;
}

FitResult fit_threshold_model(const ObservationSet& obs, double eps1, double eps2) {
  obs.validate();
  if (obs.parallel.empty()) {
    throw std::domain_error("fit_threshold_model: need at least one observation pair");
  }

  auto to_model = [](const std::vector<double>& x) -> CompoundModel {
    const double sigma = 1.0 / (1.0 + std::exp(-x[4]));  // logistic map onto (0, 1)
    return {{sigma, 1.0},
            {std::exp(x[0]), std::exp(x[1])},
            {std::exp(x[2]), std::exp(x[3])}};
  };

  auto objective = [&](const std::vector<double>& x) {
    try {
      const double ll = threshold_loglik(obs, to_model(x), eps1, eps2);
      return std::isfinite(ll) ? -ll : kBigPenalty;
    } catch (const std::domain_error&) {
      return kBigPenalty;
    } catch (const std::runtime_error&) {
      return kBigPenalty;
    }
  };

  // alpha = beta = 1, sigma = 0.5
  std::vector<double> x0 = {0.0, 0.0, 0.0, 0.0, 0.0};
  OptimizerSpec spec;
  spec.initial_step = 0.5;
  spec.f_tol = 1e-8;
  spec.x_tol = 1e-6;
  spec.max_iters = 4000;
  NelderMeadResult opt = multistart_nelder_mead(objective, x0, spec);

  const CompoundModel fitted = to_model(opt.x);
  FitResult fit;
  fit.loglik = -opt.f;
  fit.converged = opt.converged && std::isfinite(fit.loglik);
  fit.iterations = opt.iterations;
  fit.params = {{"alpha1", fitted.score1.alpha},
                {"beta1", fitted.score1.beta},
                {"alpha2", fitted.score2.alpha},
                {"beta2", fitted.score2.beta},
                {"sigma", fitted.directing.sigma}};
  fit.fixed = {{"K", 1.0}};
  return fit;
}

LoglikReport loglik_report(const ObservationSet& obs, const MarginalFamily& m1,
                           const MarginalFamily& m2, double lambda1, double lambda2) {
  LoglikReport report;
  report.clayton =
      fit_copula_two_step(obs, m1, m2, lambda1, lambda2, CopulaVariant::clayton);
  const AlphaClaytonParams clayton_opt = copula_params(report.clayton);
  report.symmetric = fit_copula_two_step(obs, m1, m2, lambda1, lambda2,
                                         CopulaVariant::symmetric, clayton_opt);
  const AlphaClaytonParams sym_opt = copula_params(report.symmetric);
  report.full = fit_copula_two_step(obs, m1, m2, lambda1, lambda2, CopulaVariant::full,
                                    sym_opt);
  return report;
}

}  // namespace levycop
