#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levycop/distributions.hpp"
#include "levycop/levy_copula.hpp"
#include "levycop/observations.hpp"
#include "levycop/process_model.hpp"

namespace levycop {

struct FitResult {
  std::map<std::string, double> params;
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  std::map<std::string, double> fixed;
};

// JSON serialization with stable field names: params, loglik, converged,
// iterations, fixed.
std::string fit_result_json(const FitResult& fit);

// Loglikelihood of a continuously observed bivariate compound Poisson process.
double cpp_loglik(const ObservationSet& obs, double lambda1, double lambda2,
                  const MarginalFamily& m1, const MarginalFamily& m2,
                  const AlphaClaytonParams& cop);

// Loglikelihood of thresholded observations (joint jumps only) under the
// working-example intensity; the exponent rate is the bivariate tail at the
// thresholds and the jump terms use the intensity directly.
double threshold_loglik(const ObservationSet& obs, const CompoundModel& m,
                        double eps1, double eps2);

// Poisson MLEs of the marginal jump rates: (n_j_perp + n_par) / T.
std::pair<double, double> rate_estimates(const ObservationSet& obs);

FitResult fit_marginal(const std::vector<double>& weights, FamilyTag family);

struct MarginalSelection {
  MarginalFamily family;
  FitResult fit;
  double ks = 0.0;
};

// Fits every candidate, keeps the one with smallest KS distance; ties break
// by candidate order.
MarginalSelection select_marginal(const std::vector<double>& weights,
                                  const std::vector<FamilyTag>& candidates = {
                                      FamilyTag::Gamma, FamilyTag::LogNormal,
                                      FamilyTag::Weibull});

enum class CopulaVariant { full, symmetric, clayton };

// Second step of the two-step fit: copula parameters only, marginals and
// rates pinned.
FitResult fit_copula_two_step(const ObservationSet& obs, const MarginalFamily& m1,
                              const MarginalFamily& m2, double lambda1, double lambda2,
                              CopulaVariant variant,
                              std::optional<AlphaClaytonParams> start = std::nullopt);

// Thresholded-observation fit of (alpha1, beta1, alpha2, beta2, sigma) with
// K = 1 pinned.
FitResult fit_threshold_model(const ObservationSet& obs, double eps1, double eps2);

struct LoglikReport {
  FitResult full;
  FitResult symmetric;
  FitResult clayton;
};

// Nested chain: Clayton first, the richer models started from the poorer
// optimum, so logliks are ordered full >= symmetric >= clayton.
LoglikReport loglik_report(const ObservationSet& obs, const MarginalFamily& m1,
                           const MarginalFamily& m2, double lambda1, double lambda2);

AlphaClaytonParams copula_params(const FitResult& fit);

}  // namespace levycop
