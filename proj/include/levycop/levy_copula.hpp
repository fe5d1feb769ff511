#pragma once

#include <functional>

#include "levycop/numerics.hpp"
#include "levycop/process_model.hpp"

namespace levycop {

// Parameters of the asymmetric Clayton-type Levy copula; sigma ranges over
// (0, infinity), with sigma = 1/theta recovering the Clayton copula at
// alpha1 = alpha2 = 1.
struct AlphaClaytonParams {
  double sigma;
  double alpha1;
  double alpha2;

  void validate() const;
};

// Score survival copula plus marginal survival functions, the generic route
// from a score distribution to its Levy copula.
struct ScoreSurvivalSpec {
  std::function<double(double, double)> survival_copula;
  std::function<double(double)> survival1;
  std::function<double(double)> survival2;
};

// Arguments may be infinity; the marginal property is handled by explicit branches.
double independence_copula(double s1, double s2);
double complete_dependence_copula(double s1, double s2);
double clayton_copula(double theta, double s1, double s2);

double alpha_clayton(const AlphaClaytonParams& p, double s1, double s2);

// Conditional distribution functions dC/ds1 and dC/ds2, values in [0, 1].
double alpha_clayton_d1(const AlphaClaytonParams& p, double s1, double s2);
double alpha_clayton_d2(const AlphaClaytonParams& p, double s1, double s2);

// Mixed density d^2 C / ds1 ds2.
double alpha_clayton_density(const AlphaClaytonParams& p, double s1, double s2);

// Solves alpha_clayton_d1(p, s1, s2) = q for s2.
double conditional_inverse(const AlphaClaytonParams& p, double s1, double q);

// Levy copula of a compound vector of subordinators from its score survival
// copula and stable directing measure, all by quadrature.
double copula_from_scores(const ScoreSurvivalSpec& spec, const StableDirecting& directing,
                          double s1, double s2, const QuadratureSpec& quad = {});

// Numerical check of the complete-dependence (sigma small) and independence
// (sigma large) limits over the fixed grid {0.5, 1, 2}^2.
struct LimitReport {
  double sup_dev_complete_dependence;  // sup |C_{0.01,alpha} - min|
  double sup_independence;             // sup |C_{100,alpha}|
};
LimitReport limit_checks(double alpha1, double alpha2);

}  // namespace levycop
