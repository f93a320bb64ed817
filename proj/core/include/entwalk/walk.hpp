#pragma once

#include <complex>

#include <Eigen/Dense>

#include "entwalk/distribution.hpp"

namespace entwalk {

using cplx = std::complex<double>;

// Direct evolution is capped here; state size grows as (2T+1)*2^n.
inline constexpr int max_qubits = 12;

// Coin register state at the starting position. Basis index c is the
// big-endian bit pattern of the n qubits: c=0 is all-zeros, c=2^n-1 all-ones.
struct InitialStateSpec {
  Eigen::VectorXcd coin_amplitudes;
  int origin_position = 0;

  // (|0..0> + phase |1..1>)/sqrt(2); the standard maximally entangled start.
  static InitialStateSpec entangled(int n, cplx phase = 1.0);
};

// Empty matrix selects the Hadamard tensor power; anything else must be a
// unitary 2^n x 2^n matrix.
struct CoinSpec {
  Eigen::MatrixXcd matrix;

  static CoinSpec hadamard_power() { return {}; }
  static CoinSpec custom(Eigen::MatrixXcd m) { return {std::move(m)}; }
  bool is_hadamard_power() const { return matrix.size() == 0; }
};

struct WalkConfig {
  int n = 1;      // number of coin qubits
  int steps = 0;  // T
  InitialStateSpec initial_state;
  CoinSpec coin;

  static WalkConfig standard(int n, int steps);
  // Throws std::domain_error on out-of-range n, negative steps, or a
  // non-normalized / wrongly sized initial state.
  void validate() const;
};

struct CoinOperator {
  int n = 0;
  Eigen::MatrixXcd matrix;
  bool hadamard_power = false;  // enables the fast transform path

  Eigen::Index dim() const { return matrix.rows(); }
};

// Amplitudes over (position, coin basis); row i is position position_offset+i.
struct StateVector {
  Eigen::MatrixXcd amplitudes;
  int position_offset = 0;

  Eigen::Index num_positions() const { return amplitudes.rows(); }
  Eigen::Index coin_dim() const { return amplitudes.cols(); }
  int position_of(Eigen::Index i) const { return position_offset + static_cast<int>(i); }
  double squared_norm() const { return amplitudes.squaredNorm(); }
};

CoinOperator build_coin(int n);
CoinOperator build_coin(int n, const CoinSpec& spec);

// State localized at the origin with the configured coin register, sized so
// that `steps` shifts never leave the window.
StateVector initial_state_vector(const WalkConfig& config);

// Applies the coin to the register at every position independently.
StateVector apply_coin(StateVector state, const CoinOperator& coin);

// Conditional displacement: coin index 0 moves +1, index 2^n-1 moves -1,
// every other index stays. Amplitude at the window edge that would be pushed
// out signals a sizing bug and throws std::logic_error.
StateVector apply_shift(StateVector state);

// steps applications of shift∘coin to the initial state.
StateVector evolve(const WalkConfig& config);

ProbabilityDistribution probabilities(const StateVector& state);

}  // namespace entwalk
