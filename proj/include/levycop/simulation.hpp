#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "levycop/distributions.hpp"
#include "levycop/levy_copula.hpp"
#include "levycop/observations.hpp"
#include "levycop/process_model.hpp"

namespace levycop {

struct SeedSpec {
  std::uint64_t seed = 0;
};

// Minimum directing-jump weight retained in the truncated series.
struct TruncationSpec {
  double tau;

  void validate() const;
};

struct Jump {
  double time;
  double w1;
  double w2;
};

struct JumpPath {
  double horizon;
  std::vector<Jump> jumps;
};

enum class JumpKind { par, perp1, perp2, both };

struct ClassifiedJump {
  double time;
  double w1;
  double w2;
  JumpKind kind;
};

struct ClassifiedPath {
  double horizon;
  std::vector<ClassifiedJump> jumps;
};

// Ferguson-Klass series for the stable directing subordinator on [0, T]:
// arrival sums of unit exponentials mapped through the inverse tail integral,
// truncated at the first weight below tau. Returns (time, weight) pairs.
std::vector<std::pair<double, double>> ferguson_klass_stable(const StableDirecting& d,
                                                             double horizon,
                                                             const TruncationSpec& trunc,
                                                             SeedSpec seed);

// Directing series multiplied by independent Gamma scores per dimension.
JumpPath compound_path(const CompoundModel& m, double horizon,
                       const TruncationSpec& trunc, SeedSpec seed);

// Keeps jumps with w1 > eps1 and w2 > eps2 as parallel observations.
ObservationSet threshold_observations(const JumpPath& path, double eps1, double eps2);

// Bivariate compound Poisson sampler driven by an alpha-Clayton Levy copula.
ClassifiedPath compound_poisson_sample(double lambda1, double lambda2,
                                       const MarginalFamily& f1, const MarginalFamily& f2,
                                       const AlphaClaytonParams& cop, double horizon,
                                       SeedSpec seed);

// Groups a classified path into perpendicular / parallel weight lists.
ObservationSet classify(const ClassifiedPath& path);

}  // namespace levycop
