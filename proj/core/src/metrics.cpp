#include "entwalk/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace entwalk {

namespace {

double plogp_sum(const Eigen::VectorXd& p, double floor) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    double v = std::min(p[i], 1.0);
    if (v > floor) h -= v * std::log(v);
  }
  return h;
}

}  // namespace

void ReducedDensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
  if (entries.rows() != entries.cols()) {
    throw std::domain_error("density matrix: not square");
  }
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
    throw std::domain_error("density matrix: not Hermitian");
  }
  if (std::abs(entries.trace().real() - 1.0) > trace_tol) {
    throw std::domain_error("density matrix: trace is off 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -psd_tol) {
    throw std::domain_error("density matrix: negative eigenvalue beyond tolerance");
  }
}

PositionMoments position_moments(const ProbabilityDistribution& dist) {
  // Pairing mirror cells keeps the mean of a symmetric distribution exactly 0
  // and the second moment of the classical baseline free of cancellation.
  const Eigen::Index n = dist.size();
  double mean = 0.0, second = 0.0;
  Eigen::Index lo = 0, hi = n - 1;
  for (; lo < hi; ++lo, --hi) {
    const double xl = dist.position_of(lo), xh = dist.position_of(hi);
    mean += xl * dist.weights[lo] + xh * dist.weights[hi];
    second += xl * xl * dist.weights[lo] + xh * xh * dist.weights[hi];
  }
  if (lo == hi) {
    const double x = dist.position_of(lo);
    mean += x * dist.weights[lo];
    second += x * x * dist.weights[lo];
  }
  PositionMoments m;
  m.expected_position = mean;
  m.variance = std::max(0.0, second - mean * mean);
  m.std_dev = std::sqrt(m.variance);
  return m;
}

int support_count(const ProbabilityDistribution& dist, double threshold) {
  if (threshold < 0.0) {
    throw std::domain_error("support_count: negative threshold");
  }
  int count = 0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    if (dist.weights[i] > threshold) ++count;
  }
  return count;
}

double symmetry_defect(const ProbabilityDistribution& dist) {
  double worst = 0.0;
  int lo = dist.min_position(), hi = dist.max_position();
  for (int x = std::min(-hi, lo); x <= std::max(hi, -lo); ++x) {
    worst = std::max(worst, std::abs(dist.at(x) - dist.at(-x)));
  }
  return worst;
}

double shannon_entropy(const ProbabilityDistribution& dist) {
  return plogp_sum(dist.weights, 0.0);
}

ReducedDensityMatrix reduced_density_position(const StateVector& state) {
  ReducedDensityMatrix rho;
  rho.entries = state.amplitudes * state.amplitudes.adjoint();
  return rho;
}

ReducedDensityMatrix reduced_density_coin(const StateVector& state) {
  ReducedDensityMatrix rho;
  rho.entries = (state.amplitudes.adjoint() * state.amplitudes).transpose();
  return rho;
}

double von_neumann_entropy(const ReducedDensityMatrix& rho) {
  if (rho.entries.rows() != rho.entries.cols()) {
    throw std::domain_error("von_neumann_entropy: matrix not square");
  }
  if ((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::domain_error("von_neumann_entropy: matrix not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
  Eigen::VectorXd evals = solver.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
  return plogp_sum(evals, 1e-14);
}

double coin_entropy(const StateVector& state) {
  return von_neumann_entropy(reduced_density_coin(state));
}

double coin_marginal_shannon_entropy(const StateVector& state) {
  Eigen::VectorXd q = state.amplitudes.colwise().squaredNorm();
  return plogp_sum(q, 0.0);
}

std::vector<MetricsReport> metrics_series(const WalkConfig& config, double threshold) {
  config.validate();
  std::vector<MetricsReport> series;
  series.reserve(config.steps + 1);

  StateVector state = initial_state_vector(config);
  const CoinOperator coin = build_coin(config.n, config.coin);

  for (int t = 0; t <= config.steps; ++t) {
    if (t > 0) {
      state = apply_shift(apply_coin(std::move(state), coin));
    }
    ProbabilityDistribution dist = probabilities(state);
    MetricsReport report;
    report.step = t;
    PositionMoments moments = position_moments(dist);
    report.variance = moments.variance;
    report.std_dev = moments.std_dev;
    report.expected_position = moments.expected_position;
    report.support_count = support_count(dist, threshold);
    report.shannon_entropy_position = shannon_entropy(dist);
    report.von_neumann_entropy_position = coin_entropy(state);
    report.shannon_entropy_coin = coin_marginal_shannon_entropy(state);
    report.symmetry_defect = symmetry_defect(dist);
    series.push_back(report);
  }
  return series;
}

}  // namespace entwalk
