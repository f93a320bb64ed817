#pragma once

#include "entwalk/distribution.hpp"

namespace entwalk {

struct ClassicalWalkConfig {
  int steps = 0;
  double p_right = 0.5;

  // Throws std::domain_error on negative steps or p outside [0,1].
  void validate() const;
};

// Exact binomial distribution of a +-1 random walk after `steps` moves:
// P(x) = C(T, (T+x)/2) p^((T+x)/2) (1-p)^((T-x)/2) on positions with the
// parity of T, zero elsewhere. No sampling involved.
ProbabilityDistribution classical_distribution(const ClassicalWalkConfig& config);

}  // namespace entwalk
