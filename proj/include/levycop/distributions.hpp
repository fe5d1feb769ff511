#pragma once

#include <random>
#include <string>

namespace levycop {

enum class FamilyTag { Gamma, LogNormal, Weibull };

std::string family_name(FamilyTag tag);

// Two-parameter jump-weight family on (0, infinity):
//   Gamma:     p1 = shape, p2 = rate
//   LogNormal: p1 = mu (log scale, any real), p2 = sigma of logs
//   Weibull:   p1 = shape, p2 = scale
struct MarginalFamily {
  FamilyTag tag = FamilyTag::Gamma;
  double p1 = 1.0;
  double p2 = 1.0;

  void validate() const;

  double log_pdf(double x) const;
  double pdf(double x) const;
  double cdf(double x) const;
  double survival(double x) const;
  // x with survival(x) = u, u in (0, 1)
  double survival_inverse(double u) const;
  double sample(std::mt19937_64& rng) const;
};

}  // namespace levycop
