#include "levycop/levy_copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace levycop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_nonnegative(double s1, double s2, const char* who) {
  if (s1 < 0.0 || s2 < 0.0 || std::isnan(s1) || std::isnan(s2)) {
    throw std::domain_error(std::string(who) + ": arguments must be nonnegative");
  }
}

}  // namespace

void AlphaClaytonParams::validate() const {
  if (!(sigma > 0.0) || !(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw std::domain_error("AlphaClaytonParams: sigma, alpha1, alpha2 must be positive");
  }
}

double independence_copula(double s1, double s2) {
  check_nonnegative(s1, s2, "independence_copula");
  if (std::isinf(s1) && std::isinf(s2)) return kInf;
  if (std::isinf(s2)) return s1;
  if (std::isinf(s1)) return s2;
  return 0.0;
}

double complete_dependence_copula(double s1, double s2) {
  check_nonnegative(s1, s2, "complete_dependence_copula");
  return std::min(s1, s2);
}

double clayton_copula(double theta, double s1, double s2) {
  if (!(theta > 0.0)) {
    throw std::domain_error("clayton_copula: theta must be positive");
  }
  check_nonnegative(s1, s2, "clayton_copula");
  if (s1 == 0.0 || s2 == 0.0) return 0.0;
  if (std::isinf(s1) && std::isinf(s2)) return kInf;
  if (std::isinf(s2)) return s1;
  if (std::isinf(s1)) return s2;
  return std::pow(std::pow(s1, -theta) + std::pow(s2, -theta), -1.0 / theta);
}

namespace {

// log r_i = (log Gamma(alpha_i + sigma) - log Gamma(alpha_i) - log s_i) / sigma
double log_r(double alpha, double sigma, double s) {
  return (log_gamma(alpha + sigma) - log_gamma(alpha) - std::log(s)) / sigma;
}

// r1 / (r1 + r2) from the log values, without overflow
double ratio_from_logs(double lr1, double lr2) {
  return 1.0 / (1.0 + std::exp(lr2 - lr1));
}

}  // namespace

double alpha_clayton(const AlphaClaytonParams& p, double s1, double s2) {
  p.validate();
  check_nonnegative(s1, s2, "alpha_clayton");
  if (s1 == 0.0 || s2 == 0.0) return 0.0;
  if (std::isinf(s1) && std::isinf(s2)) return kInf;
  if (std::isinf(s2)) return s1;
  if (std::isinf(s1)) return s2;
  const double lr1 = log_r(p.alpha1, p.sigma, s1);
  const double lr2 = log_r(p.alpha2, p.sigma, s2);
  const double x1 = ratio_from_logs(lr1, lr2);
  const double x2 = ratio_from_logs(lr2, lr1);
  return s1 * reg_inc_beta(x1, p.alpha1 + p.sigma, p.alpha2) +
         s2 * reg_inc_beta(x2, p.alpha2 + p.sigma, p.alpha1);
}

double alpha_clayton_d1(const AlphaClaytonParams& p, double s1, double s2) {
  p.validate();
  if (!(s1 > 0.0) || std::isinf(s1)) {
    throw std::domain_error("alpha_clayton_d1: s1 must be positive finite");
  }
  if (s2 < 0.0 || std::isnan(s2)) {
    throw std::domain_error("alpha_clayton_d1: s2 must be nonnegative");
  }
  if (s2 == 0.0) return 0.0;
  if (std::isinf(s2)) return 1.0;
  const double lr1 = log_r(p.alpha1, p.sigma, s1);
  const double lr2 = log_r(p.alpha2, p.sigma, s2);
  return reg_inc_beta(ratio_from_logs(lr1, lr2), p.alpha1 + p.sigma, p.alpha2);
}

double alpha_clayton_d2(const AlphaClaytonParams& p, double s1, double s2) {
  return alpha_clayton_d1({p.sigma, p.alpha2, p.alpha1}, s2, s1);
}

double alpha_clayton_density(const AlphaClaytonParams& p, double s1, double s2) {
  p.validate();
  if (!(s1 > 0.0) || !(s2 > 0.0) || std::isinf(s1) || std::isinf(s2)) {
    throw std::domain_error("alpha_clayton_density: arguments must be positive finite");
  }
  const double lr1 = log_r(p.alpha1, p.sigma, s1);
  const double lr2 = log_r(p.alpha2, p.sigma, s2);
  const double lsum = std::max(lr1, lr2) + std::log1p(std::exp(-std::fabs(lr1 - lr2)));
  const double log_val = log_gamma(p.alpha1 + p.alpha2 + p.sigma) - std::log(p.sigma) -
                         log_gamma(p.alpha1) - log_gamma(p.alpha2) - std::log(s1) -
                         std::log(s2) + p.alpha1 * lr1 + p.alpha2 * lr2 -
                         (p.alpha1 + p.alpha2 + p.sigma) * lsum;
  return std::exp(log_val);
}

double conditional_inverse(const AlphaClaytonParams& p, double s1, double q) {
  p.validate();
  if (!(s1 > 0.0)) {
    throw std::domain_error("conditional_inverse: s1 must be positive");
  }
  if (!(q > 0.0) || !(q < 1.0)) {
    throw std::domain_error("conditional_inverse: q must be in (0, 1)");
  }
  double lo = 1.0;
  double hi = 1.0;
  while (alpha_clayton_d1(p, s1, lo) > q) {
    lo *= 0.5;
    if (lo < 1e-12) break;
  }
  while (alpha_clayton_d1(p, s1, hi) < q) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  if (alpha_clayton_d1(p, s1, lo) > q || alpha_clayton_d1(p, s1, hi) < q) {
    throw std::runtime_error("conditional_inverse: root not bracketed in [1e-12, 1e12]");
  }
  double llo = std::log(lo);
  double lhi = std::log(hi);
  for (int i = 0; i < 200 && lhi - llo > 1e-14; ++i) {
    const double mid = 0.5 * (llo + lhi);
    if (alpha_clayton_d1(p, s1, std::exp(mid)) < q) {
      llo = mid;
    } else {
      lhi = mid;
    }
  }
  return std::exp(0.5 * (llo + lhi));
}

namespace {

// Marginal tail integral used by the score-to-copula transform:
// U(x) = sigma K int_0^infty S(x/z) z^{-sigma-1} dz, split at z = x where the
// survival argument passes 1.
double score_marginal_tail(const std::function<double(double)>& survival,
                           const StableDirecting& d, double x,
                           const QuadratureSpec& quad) {
  auto g = [&](double z) {
    return survival(x / z) * d.sigma * d.k * std::pow(z, -d.sigma - 1.0);
  };
  const double inner = integrate(g, 0.0, x, quad);
  const double outer = integrate_semi_infinite([&](double u) { return g(x + u); }, quad);
  return inner + outer;
}

double invert_score_marginal_tail(const std::function<double(double)>& survival,
                                  const StableDirecting& d, double s,
                                  const QuadratureSpec& quad) {
  auto tail = [&](double x) { return score_marginal_tail(survival, d, x, quad); };
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (tail(lo) < s) {  // tail decreasing in x, grows as x -> 0
    lo *= 0.5;
    if (++guard > 200) throw std::runtime_error("copula_from_scores: tail inversion bracket failed");
  }
  guard = 0;
  while (tail(hi) > s) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("copula_from_scores: tail inversion bracket failed");
  }
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < 100 && lhi - llo > 1e-11; ++i) {
    const double mid = 0.5 * (llo + lhi);
    if (tail(std::exp(mid)) > s) {
      llo = mid;
    } else {
      lhi = mid;
    }
  }
  return std::exp(0.5 * (llo + lhi));
}

}  // namespace

double copula_from_scores(const ScoreSurvivalSpec& spec, const StableDirecting& directing,
                          double s1, double s2, const QuadratureSpec& quad) {
  directing.validate();
  if (!(s1 > 0.0) || !(s2 > 0.0) || std::isinf(s1) || std::isinf(s2)) {
    throw std::domain_error("copula_from_scores: arguments must be positive finite");
  }
  const double x1 = invert_score_marginal_tail(spec.survival1, directing, s1, quad);
  const double x2 = invert_score_marginal_tail(spec.survival2, directing, s2, quad);

  auto g = [&](double z) {
    return spec.survival_copula(spec.survival1(x1 / z), spec.survival2(x2 / z)) *
           directing.sigma * directing.k * std::pow(z, -directing.sigma - 1.0);
  };
  const double za = std::min(x1, x2);
  const double zb = std::max(x1, x2);
  double result = integrate(g, 0.0, za, quad);
  if (zb > za) result += integrate(g, za, zb, quad);
  result += integrate_semi_infinite([&](double u) { return g(zb + u); }, quad);
  return result;
}

LimitReport limit_checks(double alpha1, double alpha2) {
  const double grid[3] = {0.5, 1.0, 2.0};
  LimitReport report{0.0, 0.0};
  const AlphaClaytonParams low{0.01, alpha1, alpha2};
  const AlphaClaytonParams high{100.0, alpha1, alpha2};
  for (double s1 : grid) {
    for (double s2 : grid) {
      report.sup_dev_complete_dependence =
          std::max(report.sup_dev_complete_dependence,
                   std::fabs(alpha_clayton(low, s1, s2) - std::min(s1, s2)));
      report.sup_independence =
          std::max(report.sup_independence, std::fabs(alpha_clayton(high, s1, s2)));
    }
  }
  return report;
}

}  // namespace levycop
