#pragma once

#include "levycop/numerics.hpp"

namespace levycop {

// Gamma(alpha, beta) score marginal, beta a rate.
struct GammaScore {
  double alpha;
  double beta;

  void validate() const;
  double mean() const { return alpha / beta; }
  double second_moment() const { return alpha * (alpha + 1.0) / (beta * beta); }
  // E[W^sigma]
  double power_moment(double sigma) const;
};

// sigma-stable directing intensity rho*(z) = sigma * K * z^{-sigma-1}.
struct StableDirecting {
  double sigma;
  double k;

  void validate() const;
};

// Gamma directing intensity rho*(z) = a z^{-1} e^{-bz}; Laplace exponent
// psi*_t(lambda) = t a log(1 + lambda / b).
struct GammaDirecting {
  double a;
  double b;

  void validate() const;
  double psi_prime0(double t) const { return t * a / b; }
  double psi_second0(double t) const { return -t * a / (b * b); }
};

// Working-example compound vector: stable directing, independent Gamma scores.
struct CompoundModel {
  StableDirecting directing;
  GammaScore score1;
  GammaScore score2;

  void validate() const;
  const GammaScore& score(int dim) const;
};

// Moment formulas need a directing measure with finite psi*'(0), psi*''(0);
// the stable one has psi*'(0) infinite, so moments use a Gamma directing measure.
struct MomentModel {
  GammaDirecting directing;
  GammaScore score1;
  GammaScore score2;

  void validate() const;
  const GammaScore& score(int dim) const;
};

// Bivariate Levy intensity rho_{sigma,K,alpha,beta}(s1, s2).
double levy_intensity(const CompoundModel& m, double s1, double s2);

// Marginal intensity rho_i(s) = sigma K_i s^{-sigma-1}.
double marginal_intensity(const CompoundModel& m, int dim, double s);

// Stable proportionality parameter K_i = K beta_i^{-sigma} Gamma(alpha_i+sigma)/Gamma(alpha_i).
double stable_marginal_coefficient(const CompoundModel& m, int dim);

// U_i(y) = K_i y^{-sigma}.
double marginal_tail(const CompoundModel& m, int dim, double y);

// Inverse of the marginal tail integral.
double marginal_tail_inverse(const CompoundModel& m, int dim, double u);

// Closed-form bivariate tail integral U(y1, y2).
double bivariate_tail(const CompoundModel& m, double y1, double y2);

// Sufficient well-posedness condition: every score marginal has finite mean.
bool well_posed(const GammaScore& s1, const GammaScore& s2);
bool well_posed(bool score1_mean_finite, bool score2_mean_finite);

double mean(const MomentModel& m, int dim, double t);
double variance(const MomentModel& m, int dim, double t);
double covariance(const MomentModel& m, double t);
double correlation(const MomentModel& m);

// E[(Y_i(t))^p], p in (0, sigma), closed form for stable directing + Gamma scores.
double fractional_moment_stable(const CompoundModel& m, int dim, double t, double p);

// Same moment through the integral representation, by quadrature.
double fractional_moment_integral(const CompoundModel& m, int dim, double t, double p,
                                  const QuadratureSpec& spec = {});

}  // namespace levycop
