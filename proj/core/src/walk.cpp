#include "entwalk/walk.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace entwalk {

void ProbabilityDistribution::validate(double tol) const {
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) {
      throw std::domain_error("distribution: negative weight at position " +
                              std::to_string(position_of(i)));
    }
  }
  double sum = total();
  if (std::abs(sum - 1.0) > tol) {
    throw std::domain_error("distribution: total " + std::to_string(sum) + " is off 1");
  }
}

InitialStateSpec InitialStateSpec::entangled(int n, cplx phase) {
  if (n < 1 || n > max_qubits) {
    throw std::domain_error("initial state: qubit count out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  const double r = 1.0 / std::sqrt(2.0);
  amps[0] = r;
  amps[amps.size() - 1] = phase * r;
  return {std::move(amps), 0};
}

WalkConfig WalkConfig::standard(int n, int steps) {
  return {n, steps, InitialStateSpec::entangled(n), CoinSpec::hadamard_power()};
}

void WalkConfig::validate() const {
  if (n < 1 || n > max_qubits) {
    throw std::domain_error("walk config: n must lie in [1, " + std::to_string(max_qubits) + "]");
  }
  if (steps < 0) {
    throw std::domain_error("walk config: negative step count");
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (initial_state.coin_amplitudes.size() != dim) {
    throw std::domain_error("walk config: initial coin register has wrong dimension");
  }
  if (std::abs(initial_state.coin_amplitudes.norm() - 1.0) > 1e-12) {
    throw std::domain_error("walk config: initial coin register is not normalized");
  }
  if (!coin.is_hadamard_power() &&
      (coin.matrix.rows() != dim || coin.matrix.cols() != dim)) {
    throw std::domain_error("walk config: coin matrix has wrong dimension");
  }
}

namespace {

Eigen::MatrixXcd hadamard_power_matrix(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      // Entry sign is the parity of the AND of the row and column bit patterns.
      int bits = __builtin_popcountll(static_cast<unsigned long long>(r & c));
      m(r, c) = (bits & 1) ? -scale : scale;
    }
  }
  return m;
}

void check_unitary(const Eigen::MatrixXcd& m, double tol) {
  Eigen::MatrixXcd gram = m * m.adjoint();
  gram -= Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  if (gram.cwiseAbs().maxCoeff() > tol) {
    throw std::domain_error("coin: matrix is not unitary");
  }
}

// In-place row-wise fast Walsh-Hadamard transform, normalized.
void fwht_rows(Eigen::MatrixXcd& a) {
  const Eigen::Index dim = a.cols();
  Eigen::VectorXcd u(a.rows());
  for (Eigen::Index len = 1; len < dim; len <<= 1) {
    for (Eigen::Index block = 0; block < dim; block += 2 * len) {
      for (Eigen::Index j = block; j < block + len; ++j) {
        u = a.col(j);
        a.col(j) += a.col(j + len);
        a.col(j + len) = u - a.col(j + len);
      }
    }
  }
  a *= 1.0 / std::sqrt(static_cast<double>(dim));
}

void apply_coin_in_place(StateVector& state, const CoinOperator& coin) {
  if (state.coin_dim() != coin.dim()) {
    throw std::domain_error("apply_coin: coin and state dimensions differ");
  }
  if (coin.hadamard_power) {
    fwht_rows(state.amplitudes);
  } else {
    state.amplitudes = state.amplitudes * coin.matrix.transpose();
  }
}

void apply_shift_in_place(StateVector& state) {
  const Eigen::Index rows = state.num_positions();
  const Eigen::Index dim = state.coin_dim();
  if (rows == 0 || dim < 2) {
    throw std::domain_error("apply_shift: state too small");
  }
  cplx* up = state.amplitudes.col(0).data();
  cplx* down = state.amplitudes.col(dim - 1).data();
  if (std::abs(up[rows - 1]) > 1e-15 || std::abs(down[0]) > 1e-15) {
    throw std::logic_error("apply_shift: displacement leaves the allocated window");
  }
  std::memmove(up + 1, up, sizeof(cplx) * (rows - 1));
  up[0] = cplx(0.0, 0.0);
  std::memmove(down, down + 1, sizeof(cplx) * (rows - 1));
  down[rows - 1] = cplx(0.0, 0.0);
}

}  // namespace

CoinOperator build_coin(int n) { return build_coin(n, CoinSpec::hadamard_power()); }

CoinOperator build_coin(int n, const CoinSpec& spec) {
  if (n < 1 || n > max_qubits) {
    throw std::domain_error("build_coin: n must lie in [1, " + std::to_string(max_qubits) + "]");
  }
  CoinOperator coin;
  coin.n = n;
  if (spec.is_hadamard_power()) {
    coin.matrix = hadamard_power_matrix(n);
    coin.hadamard_power = true;
  } else {
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (spec.matrix.rows() != dim || spec.matrix.cols() != dim) {
      throw std::domain_error("build_coin: custom matrix has wrong dimension");
    }
    check_unitary(spec.matrix, 1e-12);
    coin.matrix = spec.matrix;
    coin.hadamard_power = false;
  }
  return coin;
}

StateVector initial_state_vector(const WalkConfig& config) {
  config.validate();
  const Eigen::Index dim = Eigen::Index(1) << config.n;
  StateVector state;
  state.amplitudes = Eigen::MatrixXcd::Zero(2 * config.steps + 1, dim);
  state.position_offset = config.initial_state.origin_position - config.steps;
  state.amplitudes.row(config.steps) = config.initial_state.coin_amplitudes.transpose();
  return state;
}

StateVector apply_coin(StateVector state, const CoinOperator& coin) {
  apply_coin_in_place(state, coin);
  return state;
}

StateVector apply_shift(StateVector state) {
  apply_shift_in_place(state);
  return state;
}

StateVector evolve(const WalkConfig& config) {
  StateVector state = initial_state_vector(config);
  const CoinOperator coin = build_coin(config.n, config.coin);
  for (int t = 0; t < config.steps; ++t) {
    apply_coin_in_place(state, coin);
    apply_shift_in_place(state);
  }
  if (std::abs(state.squared_norm() - 1.0) > 1e-10) {
    throw std::runtime_error("evolve: norm drifted beyond tolerance");
  }
  return state;
}

ProbabilityDistribution probabilities(const StateVector& state) {
  ProbabilityDistribution dist;
  dist.weights = state.amplitudes.rowwise().squaredNorm();
  dist.position_offset = state.position_offset;
  return dist;
}

}  // namespace entwalk
