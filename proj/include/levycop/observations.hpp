#pragma once

#include <utility>
#include <vector>

namespace levycop {

// Classified jump weights of a bivariate process observed on [0, horizon]:
// jumps seen only in dimension 1 (perp1), only in dimension 2 (perp2), and in
// both dimensions at once (parallel).
struct ObservationSet {
  double horizon = 1.0;
  std::vector<double> perp1;
  std::vector<double> perp2;
  std::vector<std::pair<double, double>> parallel;

  void validate() const;
};

}  // namespace levycop
