#pragma once

#include <vector>

#include <Eigen/Dense>

#include "entwalk/distribution.hpp"
#include "entwalk/walk.hpp"

namespace entwalk {

struct PositionMoments {
  double variance = 0.0;
  double std_dev = 0.0;
  double expected_position = 0.0;
};

struct MetricsReport {
  int step = 0;
  double variance = 0.0;
  double std_dev = 0.0;
  double expected_position = 0.0;
  int support_count = 0;
  double shannon_entropy_position = 0.0;
  double von_neumann_entropy_position = 0.0;
  double shannon_entropy_coin = 0.0;
  double symmetry_defect = 0.0;
};

// Hermitian reduction of a pure state over one factor (coin or position).
struct ReducedDensityMatrix {
  Eigen::MatrixXcd entries;

  // Throws std::domain_error when Hermiticity, unit trace, or positivity is
  // violated beyond the given tolerances.
  void validate(double herm_tol = 1e-12, double trace_tol = 1e-10,
                double psd_tol = 1e-12) const;
};

PositionMoments position_moments(const ProbabilityDistribution& dist);

// Number of positions with probability strictly above threshold.
int support_count(const ProbabilityDistribution& dist, double threshold);

// max over x of |P(x) - P(-x)|.
double symmetry_defect(const ProbabilityDistribution& dist);

// Natural-log Shannon entropy; zero-weight cells contribute nothing.
double shannon_entropy(const ProbabilityDistribution& dist);

// rho(x,x') = sum_c psi(x,c) conj(psi(x',c)).
ReducedDensityMatrix reduced_density_position(const StateVector& state);

// rho(c,c') = sum_x psi(x,c) conj(psi(x,c')).
ReducedDensityMatrix reduced_density_coin(const StateVector& state);

// Entropy of the eigenvalue spectrum; eigenvalues are clamped to [0,1] and
// values below 1e-14 are dropped before x log x.
double von_neumann_entropy(const ReducedDensityMatrix& rho);

// von Neumann entropy of the coin reduction.
double coin_entropy(const StateVector& state);

// Shannon entropy of the coin-basis marginal q(c) = sum_x |psi(x,c)|^2.
double coin_marginal_shannon_entropy(const StateVector& state);

// One report per step t = 0..steps, evaluated on the state after t steps.
// The von Neumann position entropy is computed from the coin reduction: the
// position reduction of a pure state has rank at most 2^n, and both factors
// share a spectrum.
std::vector<MetricsReport> metrics_series(const WalkConfig& config, double threshold = 1e-4);

}  // namespace entwalk
