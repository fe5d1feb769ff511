#include "levycop/process_model.hpp"

#include <cmath>
#include <stdexcept>

namespace levycop {

void GammaScore::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("GammaScore: alpha and beta must be positive");
  }
}

double GammaScore::power_moment(double sigma) const {
  return std::exp(log_gamma(alpha + sigma) - log_gamma(alpha) - sigma * std::log(beta));
}

void StableDirecting::validate() const {
  if (!(sigma > 0.0) || !(sigma < 1.0)) {
    throw std::domain_error("StableDirecting: sigma must be in (0, 1)");
  }
  if (!(k > 0.0)) {
    throw std::domain_error("StableDirecting: K must be positive");
  }
}

void GammaDirecting::validate() const {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("GammaDirecting: a and b must be positive");
  }
}

void CompoundModel::validate() const {
  directing.validate();
  score1.validate();
  score2.validate();
}

const GammaScore& CompoundModel::score(int dim) const {
  if (dim == 1) return score1;
  if (dim == 2) return score2;
  throw std::domain_error("CompoundModel: dimension index must be 1 or 2");
}

void MomentModel::validate() const {
  directing.validate();
  score1.validate();
  score2.validate();
}

const GammaScore& MomentModel::score(int dim) const {
  if (dim == 1) return score1;
  if (dim == 2) return score2;
  throw std::domain_error("MomentModel: dimension index must be 1 or 2");
}

double levy_intensity(const CompoundModel& m, double s1, double s2) {
  m.validate();
  if (!(s1 > 0.0) || !(s2 > 0.0)) {
    throw std::domain_error("levy_intensity: jump sizes must be positive");
  }
  const double sigma = m.directing.sigma;
  const double a1 = m.score1.alpha, b1 = m.score1.beta;
  const double a2 = m.score2.alpha, b2 = m.score2.beta;
  const double log_val =
      std::log(sigma) + std::log(m.directing.k) + a1 * std::log(b1) + a2 * std::log(b2) +
      log_gamma(a1 + a2 + sigma) - log_gamma(a1) - log_gamma(a2) +
      (a1 - 1.0) * std::log(s1) + (a2 - 1.0) * std::log(s2) -
      (a1 + a2 + sigma) * std::log(b1 * s1 + b2 * s2);
  return std::exp(log_val);
}

double stable_marginal_coefficient(const CompoundModel& m, int dim) {
  m.validate();
  const GammaScore& sc = m.score(dim);
  const double sigma = m.directing.sigma;
  return std::exp(std::log(m.directing.k) - sigma * std::log(sc.beta) +
                  log_gamma(sc.alpha + sigma) - log_gamma(sc.alpha));
}

double marginal_intensity(const CompoundModel& m, int dim, double s) {
  if (!(s > 0.0)) {
    throw std::domain_error("marginal_intensity: jump size must be positive");
  }
  const double sigma = m.directing.sigma;
  return sigma * stable_marginal_coefficient(m, dim) * std::pow(s, -sigma - 1.0);
}

double marginal_tail(const CompoundModel& m, int dim, double y) {
  if (!(y > 0.0)) {
    throw std::domain_error("marginal_tail: argument must be positive");
  }
  return stable_marginal_coefficient(m, dim) * std::pow(y, -m.directing.sigma);
}

double marginal_tail_inverse(const CompoundModel& m, int dim, double u) {
  if (!(u > 0.0)) {
    throw std::domain_error("marginal_tail_inverse: argument must be positive");
  }
  const double ki = stable_marginal_coefficient(m, dim);
  return std::pow(u / ki, -1.0 / m.directing.sigma);
}

double bivariate_tail(const CompoundModel& m, double y1, double y2) {
  m.validate();
  if (!(y1 > 0.0) || !(y2 > 0.0)) {
    throw std::domain_error("bivariate_tail: arguments must be positive");
  }
  const double sigma = m.directing.sigma;
  const double a1 = m.score1.alpha, a2 = m.score2.alpha;
  const double v1 = m.score1.beta * y1;
  const double v2 = m.score2.beta * y2;
  // x = v1 / (v1 + v2) via a stable ratio of logs
  const double x = 1.0 / (1.0 + v2 / v1);
  const double t1 = std::exp(std::log(m.directing.k) + log_gamma(a1 + sigma) -
                             log_gamma(a1) - sigma * std::log(v1)) *
                    reg_inc_beta(x, a1 + sigma, a2);
  const double t2 = std::exp(std::log(m.directing.k) + log_gamma(a2 + sigma) -
                             log_gamma(a2) - sigma * std::log(v2)) *
                    reg_inc_beta(1.0 - x, a2 + sigma, a1);
  return t1 + t2;
}

bool well_posed(const GammaScore& s1, const GammaScore& s2) {
  s1.validate();
  s2.validate();
  return true;  // Gamma scores always have finite mean
}

bool well_posed(bool score1_mean_finite, bool score2_mean_finite) {
  return score1_mean_finite && score2_mean_finite;
}

double mean(const MomentModel& m, int dim, double t) {
  m.validate();
  if (!(t > 0.0)) {
    throw std::domain_error("mean: t must be positive");
  }
  return m.directing.psi_prime0(t) * m.score(dim).mean();
}

double variance(const MomentModel& m, int dim, double t) {
  m.validate();
  if (!(t > 0.0)) {
    throw std::domain_error("variance: t must be positive");
  }
  return -m.directing.psi_second0(t) * m.score(dim).second_moment();
}

double covariance(const MomentModel& m, double t) {
  m.validate();
  if (!(t > 0.0)) {
    throw std::domain_error("covariance: t must be positive");
  }
  // independent scores: E[W1 W2] = E[W1] E[W2]
  return -m.directing.psi_second0(t) * m.score1.mean() * m.score2.mean();
}

double correlation(const MomentModel& m) {
  m.validate();
  const double num = m.score1.mean() * m.score2.mean();
  const double den = std::sqrt(m.score1.second_moment() * m.score2.second_moment());
  return num / den;
}

double fractional_moment_stable(const CompoundModel& m, int dim, double t, double p) {
  m.validate();
  const double sigma = m.directing.sigma;
  if (!(t > 0.0)) {
    throw std::domain_error("fractional_moment_stable: t must be positive");
  }
  if (!(p > 0.0) || !(p < sigma)) {
    throw std::domain_error("fractional_moment_stable: p must lie in (0, sigma)");
  }
  const double ew_sigma = m.score(dim).power_moment(sigma);
  return std::exp((p / sigma) * std::log(t * m.directing.k * ew_sigma) +
                  log_gamma(1.0 - p / sigma) - log_gamma(1.0 - p));
}

double fractional_moment_integral(const CompoundModel& m, int dim, double t, double p,
                                  const QuadratureSpec& spec) {
  m.validate();
  const double sigma = m.directing.sigma;
  if (!(t > 0.0)) {
    throw std::domain_error("fractional_moment_integral: t must be positive");
  }
  if (!(p > 0.0) || !(p < sigma)) {
    throw std::domain_error("fractional_moment_integral: p must lie in (0, sigma)");
  }
  const double c = t * m.directing.k * m.score(dim).power_moment(sigma);
  // For p close to sigma the integrand u^{sigma-p-1}(1 + O(c u^sigma))
  // decays so slowly near 0 that no fixed substitution resolves it, so the
  // integral is split at u0 with c u0^sigma = delta:
  //   [0, u0]:  expand 1 - e^{-c u^sigma} and integrate termwise; the series
  //             sum_k (-1)^{k+1} c^k u0^{k sigma - p} / (k! (k sigma - p))
  //             converges geometrically since delta is small
  //   [u0, inf): 1/(p u0^p) minus int e^{-c u^sigma} u^{-p-1} du, the latter
  //             with u = u0 e^x (double-exponential decay)
  const double delta = 1e-4;
  const double u0 = std::pow(delta / c, 1.0 / sigma);
  double series = 0.0;
  double ck = 1.0;  // c^k / k!
  for (int k = 1; k <= 60; ++k) {
    ck *= c / static_cast<double>(k);
    const double term = ck * std::pow(u0, static_cast<double>(k) * sigma - p) /
                        (static_cast<double>(k) * sigma - p);
    series += (k % 2 == 1) ? term : -term;
    if (std::fabs(term) < 1e-18 * std::fabs(series)) break;
  }
  const double head = std::pow(u0, -p) / p;
  const double tail = integrate_semi_infinite(
      [c, sigma, p, u0](double x) {
        const double u = u0 * std::exp(x);
        return std::exp(-c * std::pow(u, sigma)) * std::pow(u, -p);
      },
      spec);
  return p / std::exp(log_gamma(1.0 - p)) * (series + head - tail);
}

}  // namespace levycop
