#include "levycop/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "levycop/numerics.hpp"

namespace levycop {

std::string family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Gamma: return "Gamma";
    case FamilyTag::LogNormal: return "LogNormal";
    case FamilyTag::Weibull: return "Weibull";
  }
  throw std::logic_error("family_name: unknown tag");
}

void MarginalFamily::validate() const {
  if (tag == FamilyTag::LogNormal) {
    if (!(p2 > 0.0)) throw std::domain_error("MarginalFamily: log-sd must be positive");
    return;
  }
  if (!(p1 > 0.0) || !(p2 > 0.0)) {
    throw std::domain_error("MarginalFamily: parameters must be positive");
  }
}

double MarginalFamily::log_pdf(double x) const {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  switch (tag) {
    case FamilyTag::Gamma:
      return p1 * std::log(p2) - log_gamma(p1) + (p1 - 1.0) * std::log(x) - p2 * x;
    case FamilyTag::LogNormal: {
      const double z = (std::log(x) - p1) / p2;
      return -0.5 * z * z - std::log(x * p2) - 0.5 * std::log(2.0 * M_PI);
    }
    case FamilyTag::Weibull: {
      const double y = x / p2;
      return std::log(p1 / p2) + (p1 - 1.0) * std::log(y) - std::pow(y, p1);
    }
  }
  throw std::logic_error("log_pdf: unknown tag");
}

double MarginalFamily::pdf(double x) const { return std::exp(log_pdf(x)); }

double MarginalFamily::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  switch (tag) {
    case FamilyTag::Gamma:
      return reg_inc_gamma(p1, p2 * x);
    case FamilyTag::LogNormal:
      return 0.5 * std::erfc(-(std::log(x) - p1) / (p2 * std::sqrt(2.0)));
    case FamilyTag::Weibull:
      return -std::expm1(-std::pow(x / p2, p1));
  }
  throw std::logic_error("cdf: unknown tag");
}

double MarginalFamily::survival(double x) const {
  if (x <= 0.0) return 1.0;
  switch (tag) {
    case FamilyTag::Gamma:
      return 1.0 - reg_inc_gamma(p1, p2 * x);
    case FamilyTag::LogNormal:
      return 0.5 * std::erfc((std::log(x) - p1) / (p2 * std::sqrt(2.0)));
    case FamilyTag::Weibull:
      return std::exp(-std::pow(x / p2, p1));
  }
  throw std::logic_error("survival: unknown tag");
}

double MarginalFamily::survival_inverse(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw std::domain_error("survival_inverse: u must be in (0, 1)");
  }
  if (tag == FamilyTag::Weibull) {
    return p2 * std::pow(-std::log(u), 1.0 / p1);
  }
  // monotone bisection on the survival function
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (survival(lo) < u) {
    lo *= 0.5;
    if (++guard > 2000) throw std::runtime_error("survival_inverse: bracket failed");
  }
  guard = 0;
  while (survival(hi) > u) {
    hi *= 2.0;
    if (++guard > 2000) throw std::runtime_error("survival_inverse: bracket failed");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double MarginalFamily::sample(std::mt19937_64& rng) const {
  switch (tag) {
    case FamilyTag::Gamma: {
      std::gamma_distribution<double> dist(p1, 1.0 / p2);
      return dist(rng);
    }
    case FamilyTag::LogNormal: {
      std::lognormal_distribution<double> dist(p1, p2);
      return dist(rng);
    }
    case FamilyTag::Weibull: {
      std::weibull_distribution<double> dist(p1, p2);
      return dist(rng);
    }
  }
  throw std::logic_error("sample: unknown tag");
}

}  // namespace levycop
