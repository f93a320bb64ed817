#include "entwalk/classical.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace entwalk {

void ClassicalWalkConfig::validate() const {
  if (steps < 0) throw std::domain_error("classical walk: negative step count");
  if (p_right < 0.0 || p_right > 1.0) {
    throw std::domain_error("classical walk: p_right outside [0,1]");
  }
}

ProbabilityDistribution classical_distribution(const ClassicalWalkConfig& config) {
  config.validate();
  const int T = config.steps;
  const double p = config.p_right;

  ProbabilityDistribution dist;
  dist.weights = Eigen::VectorXd::Zero(2 * T + 1);
  dist.position_offset = -T;

  if (T <= 60) {
    // Binomial coefficients up to T=60 are exact integers in a 64-bit
    // mantissa; the weights stay exact dyadics for p = 1/2.
    std::vector<long double> row(T + 1, 0.0L);
    row[0] = 1.0L;
    for (int t = 1; t <= T; ++t) {
      for (int j = t; j >= 1; --j) row[j] += row[j - 1];
    }
    for (int j = 0; j <= T; ++j) {
      long double w;
      if (p == 0.5) {
        w = row[j] / std::pow(2.0L, T);
      } else {
        w = row[j] * std::pow(static_cast<long double>(p), j) *
            std::pow(static_cast<long double>(1.0 - p), T - j);
      }
      dist.weights[2 * j] = static_cast<double>(w);  // position x = 2j - T
    }
  } else if (p == 0.0) {
    dist.weights[0] = 1.0;
  } else if (p == 1.0) {
    dist.weights[2 * T] = 1.0;
  } else {
    for (int j = 0; j <= T; ++j) {
      double logw = std::lgamma(T + 1.0) - std::lgamma(j + 1.0) - std::lgamma(T - j + 1.0) +
                    j * std::log(p) + (T - j) * std::log(1.0 - p);
      dist.weights[2 * j] = std::exp(logw);
    }
  }
  return dist;
}

}  // namespace entwalk
