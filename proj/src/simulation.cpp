#include "levycop/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace levycop {

void TruncationSpec::validate() const {
  if (!(tau > 0.0)) {
    throw std::domain_error("TruncationSpec: tau must be positive");
  }
}

void ObservationSet::validate() const {
  if (!(horizon > 0.0)) {
    throw std::domain_error("ObservationSet: horizon must be positive");
  }
  for (double w : perp1) {
    if (!(w > 0.0)) throw std::domain_error("ObservationSet: weights must be positive");
  }
  for (double w : perp2) {
    if (!(w > 0.0)) throw std::domain_error("ObservationSet: weights must be positive");
  }
  for (const auto& [w1, w2] : parallel) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) {
      throw std::domain_error("ObservationSet: weights must be positive");
    }
  }
}

std::vector<std::pair<double, double>> ferguson_klass_stable(const StableDirecting& d,
                                                             double horizon,
                                                             const TruncationSpec& trunc,
                                                             SeedSpec seed) {
  d.validate();
  trunc.validate();
  if (!(horizon > 0.0)) {
    throw std::domain_error("ferguson_klass_stable: horizon must be positive");
  }
  std::mt19937_64 rng(seed.seed);
  std::exponential_distribution<double> exp1(1.0);
  std::uniform_real_distribution<double> unif(0.0, horizon);

  std::vector<std::pair<double, double>> jumps;
  double gamma = 0.0;
  for (;;) {
    gamma += exp1(rng);
    // inverse stable tail on [0, T]: (Gamma_k / (K T))^{-1/sigma}
    const double weight = std::pow(gamma / (d.k * horizon), -1.0 / d.sigma);
    if (weight < trunc.tau) break;
    jumps.emplace_back(unif(rng), weight);
  }
  return jumps;
}

JumpPath compound_path(const CompoundModel& m, double horizon,
                       const TruncationSpec& trunc, SeedSpec seed) {
  m.validate();
  auto directing = ferguson_klass_stable(m.directing, horizon, trunc, seed);

  // scores from an independent stream so the directing series is unchanged
  std::mt19937_64 rng(seed.seed ^ 0x9e3779b97f4a7c15ULL);
  std::gamma_distribution<double> g1(m.score1.alpha, 1.0 / m.score1.beta);
  std::gamma_distribution<double> g2(m.score2.alpha, 1.0 / m.score2.beta);

  JumpPath path{horizon, {}};
  path.jumps.reserve(directing.size());
  for (const auto& [time, weight] : directing) {
    path.jumps.push_back({time, g1(rng) * weight, g2(rng) * weight});
  }
  std::sort(path.jumps.begin(), path.jumps.end(),
            [](const Jump& a, const Jump& b) { return a.time < b.time; });
  return path;
}

ObservationSet threshold_observations(const JumpPath& path, double eps1, double eps2) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw std::domain_error("threshold_observations: thresholds must be positive");
  }
  ObservationSet obs;
  obs.horizon = path.horizon;
  for (const Jump& j : path.jumps) {
    if (j.w1 > eps1 && j.w2 > eps2) {
      obs.parallel.emplace_back(j.w1, j.w2);
    }
  }
  return obs;
}

namespace {

// u1 with C(u1, lambda2) = v, bisection on (0, lambda1]
double invert_joint_first_coordinate(const AlphaClaytonParams& cop, double lambda1,
                                     double lambda2, double v) {
  double lo = lambda1 * 1e-15;
  double hi = lambda1;
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * lambda1; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (alpha_clayton(cop, mid, lambda2) < v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ClassifiedPath compound_poisson_sample(double lambda1, double lambda2,
                                       const MarginalFamily& f1, const MarginalFamily& f2,
                                       const AlphaClaytonParams& cop, double horizon,
                                       SeedSpec seed) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::domain_error("compound_poisson_sample: rates must be positive");
  }
  if (!(horizon > 0.0)) {
    throw std::domain_error("compound_poisson_sample: horizon must be positive");
  }
  f1.validate();
  f2.validate();
  cop.validate();

  const double lambda_par = alpha_clayton(cop, lambda1, lambda2);
  const double lambda1_perp = lambda1 - lambda_par;
  const double lambda2_perp = lambda2 - lambda_par;

  std::mt19937_64 rng(seed.seed);
  std::uniform_real_distribution<double> unif_time(0.0, horizon);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);

  ClassifiedPath path{horizon, {}};

  auto poisson_count = [&rng](double rate) -> long {
    if (rate <= 0.0) return 0;
    std::poisson_distribution<long> dist(rate);
    return dist(rng);
  };

  const long n_par = poisson_count(lambda_par * horizon);
  const long n1 = poisson_count(lambda1_perp * horizon);
  const long n2 = poisson_count(lambda2_perp * horizon);

  for (long i = 0; i < n_par; ++i) {
    const double t = unif_time(rng);
    // first tail coordinate uniform over the joint-jump mass, second from the
    // conditional distribution restricted to u2 <= lambda2
    const double v = unif01(rng) * lambda_par;
    const double u1 = invert_joint_first_coordinate(cop, lambda1, lambda2, v);
    const double q = unif01(rng) * alpha_clayton_d1(cop, u1, lambda2);
    const double u2 = conditional_inverse(cop, u1, std::min(q, 1.0 - 1e-15));
    const double w1 = f1.survival_inverse(std::clamp(u1 / lambda1, 1e-15, 1.0 - 1e-15));
    const double w2 = f2.survival_inverse(std::clamp(u2 / lambda2, 1e-15, 1.0 - 1e-15));
    path.jumps.push_back({t, w1, w2, JumpKind::par});
  }
  for (long i = 0; i < n1; ++i) {
    path.jumps.push_back({unif_time(rng), f1.sample(rng), 0.0, JumpKind::perp1});
  }
  for (long i = 0; i < n2; ++i) {
    path.jumps.push_back({unif_time(rng), 0.0, f2.sample(rng), JumpKind::perp2});
  }
  std::sort(path.jumps.begin(), path.jumps.end(),
            [](const ClassifiedJump& a, const ClassifiedJump& b) { return a.time < b.time; });
  return path;
}

ObservationSet classify(const ClassifiedPath& path) {
  ObservationSet obs;
  obs.horizon = path.horizon;
  for (const ClassifiedJump& j : path.jumps) {
    switch (j.kind) {
      case JumpKind::perp1:
        obs.perp1.push_back(j.w1);
        break;
      case JumpKind::perp2:
        obs.perp2.push_back(j.w2);
        break;
      case JumpKind::par:
      case JumpKind::both:
        obs.parallel.emplace_back(j.w1, j.w2);
        break;
    }
  }
  return obs;
}

}  // namespace levycop
