#include "entwalk/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "entwalk/parallel.hpp"

namespace entwalk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

cplx pow_int(cplx base, int e) {
  cplx acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Eigen::VectorXcd branch_vector(const SpectralEntry& entry, int n, unsigned mask) {
  const cplx top = std::polar(1.0, entry.k / 2.0);
  const cplx vp0 = top / std::sqrt(entry.norm_plus);
  const cplx vp1 = entry.gamma_plus / std::sqrt(entry.norm_plus);
  const cplx vm0 = top / std::sqrt(entry.norm_minus);
  const cplx vm1 = entry.gamma_minus / std::sqrt(entry.norm_minus);

  Eigen::VectorXcd vec = Eigen::VectorXcd::Ones(1);
  for (int slot = 0; slot < n; ++slot) {
    const bool minus = (mask >> (n - 1 - slot)) & 1u;
    const cplx c0 = minus ? vm0 : vp0;
    const cplx c1 = minus ? vm1 : vp1;
    Eigen::VectorXcd next(vec.size() * 2);
    next.head(vec.size()) = c0 * vec;
    next.tail(vec.size()) = c1 * vec;
    vec = std::move(next);
  }
  return vec;
}

}  // namespace

double MomentumGrid::point(int j) const { return two_pi * j / num_points; }

MomentumGrid MomentumGrid::for_steps(int steps) {
  if (steps < 0) throw std::domain_error("momentum grid: negative step count");
  int m = 1;
  while (m < 4 * (steps + 1)) m <<= 1;
  return {m};
}

MomentumGrid MomentumGrid::with_points(int m) {
  if (m < 1) throw std::domain_error("momentum grid: need at least one point");
  return {m};
}

std::vector<BranchLabel> BranchLabel::all(int n) {
  if (n < 1 || n > max_qubits) throw std::domain_error("branch labels: n out of range");
  std::vector<BranchLabel> labels;
  labels.reserve(std::size_t(1) << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) labels.push_back({n, mask});
  return labels;
}

Eigen::MatrixXcd momentum_step_operator(int n, double k) {
  if (n < 1 || n > max_qubits) throw std::domain_error("momentum_step_operator: n out of range");
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd block;
  const cplx up = std::polar(r, k / 2.0);
  const cplx down = std::polar(r, -k / 2.0);
  block << up, up, down, -down;

  Eigen::MatrixXcd op = Eigen::MatrixXcd::Ones(1, 1);
  for (int slot = 0; slot < n; ++slot) {
    Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
    next.topLeftCorner(op.rows(), op.cols()) = block(0, 0) * op;
    next.topRightCorner(op.rows(), op.cols()) = block(0, 1) * op;
    next.bottomLeftCorner(op.rows(), op.cols()) = block(1, 0) * op;
    next.bottomRightCorner(op.rows(), op.cols()) = block(1, 1) * op;
    op = std::move(next);
  }
  return op;
}

Eigen::MatrixXcd momentum_walk_operator(const CoinOperator& coin, double k) {
  Eigen::MatrixXcd op = coin.matrix;
  op.row(0) *= std::polar(1.0, k);
  op.row(op.rows() - 1) *= std::polar(1.0, -k);
  return op;
}

Eigen::MatrixXcd momentum_walk_operator(int n, double k) {
  return momentum_walk_operator(build_coin(n), k);
}

SpectralEntry closed_form_eigensystem(int n, double k) {
  if (n < 1 || n > max_qubits) throw std::domain_error("closed_form_eigensystem: n out of range");
  SpectralEntry entry;
  entry.k = k;
  const double half = k / 2.0;
  entry.phi = 2.0 * std::asin(std::sin(half) / std::sqrt(2.0));
  entry.lambda_plus = std::polar(1.0, entry.phi / 2.0);
  entry.lambda_minus = -std::polar(1.0, -entry.phi / 2.0);
  const double c = std::cos(half);
  const double root = std::sqrt(1.0 + c * c);
  entry.gamma_plus = -c + root;
  entry.gamma_minus = -c - root;
  entry.norm_plus = 1.0 + entry.gamma_plus * entry.gamma_plus;
  entry.norm_minus = 1.0 + entry.gamma_minus * entry.gamma_minus;

  const Eigen::Index dim = Eigen::Index(1) << n;
  entry.eigenvalues.resize(dim);
  entry.eigenvectors.resize(dim, dim);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    BranchLabel branch{n, mask};
    entry.eigenvalues[mask] =
        pow_int(entry.lambda_plus, branch.m()) * pow_int(entry.lambda_minus, branch.q());
    entry.eigenvectors.col(mask) = branch_vector(entry, n, mask);
  }

  // Guard the printed closed forms against the numerically built operator.
  const Eigen::MatrixXcd op = momentum_step_operator(n, k);
  const Eigen::MatrixXcd residual =
      op * entry.eigenvectors - entry.eigenvectors * entry.eigenvalues.asDiagonal();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double r = residual.col(j).norm();
    if (r > 1e-8) {
      throw std::runtime_error(
          "spectral consistency: eigenpair for branch mask " + std::to_string(j) + " at k=" +
          std::to_string(k) + " has residual " + std::to_string(r));
    }
  }
  return entry;
}

SpectralSystem build_spectral_system(int n, const MomentumGrid& grid) {
  SpectralSystem system;
  system.n = n;
  system.grid = grid;
  system.entries.resize(grid.num_points);
  parallel_for(static_cast<std::size_t>(grid.num_points), [&](std::size_t j) {
    system.entries[j] = closed_form_eigensystem(n, grid.point(static_cast<int>(j)));
  });
  return system;
}

cplx branch_overlap(const SpectralEntry& entry, const BranchLabel& branch) {
  const int m = branch.m(), q = branch.q();
  const cplx lead = std::polar(1.0, -branch.n * entry.k / 2.0);
  const double tail = std::pow(entry.gamma_plus, m) * std::pow(entry.gamma_minus, q);
  const double norm = std::pow(entry.norm_plus, m / 2.0) * std::pow(entry.norm_minus, q / 2.0);
  return (lead + tail) / (std::sqrt(2.0) * norm);
}

StateVector spectral_evolve(const WalkConfig& config, const MomentumGrid& grid) {
  config.validate();
  const int T = config.steps;
  if (grid.num_points < 2 * T + 1) {
    throw std::domain_error("spectral_evolve: grid too coarse for the position window");
  }
  const Eigen::Index dim = Eigen::Index(1) << config.n;
  const CoinOperator coin = build_coin(config.n, config.coin);
  const Eigen::VectorXcd psi0 = config.initial_state.coin_amplitudes;
  const int M = grid.num_points;

  // Advance each momentum component through the eigenbasis of the exact
  // symbol. Schur vectors give an orthonormal eigenbasis even at degenerate
  // eigenvalues (the symbol is unitary, so its Schur form is diagonal).
  Eigen::MatrixXcd advanced(dim, M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    const double k = grid.point(static_cast<int>(j));
    const Eigen::MatrixXcd symbol = momentum_walk_operator(coin, k);
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(symbol, /*computeU=*/true);
    if (schur.info() != Eigen::Success) {
      throw std::runtime_error("spectral_evolve: Schur factorization failed");
    }
    const Eigen::MatrixXcd& basis = schur.matrixU();
    Eigen::VectorXcd coef = basis.adjoint() * psi0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      coef[b] *= pow_int(schur.matrixT()(b, b), T);
    }
    advanced.col(static_cast<Eigen::Index>(j)) = basis * coef;
  });

  StateVector state;
  state.amplitudes = Eigen::MatrixXcd::Zero(2 * T + 1, dim);
  state.position_offset = config.initial_state.origin_position - T;
  for (int j = 0; j < M; ++j) {
    const double k = grid.point(j);
    for (int x = -T; x <= T; ++x) {
      state.amplitudes.row(x + T) +=
          std::polar(1.0 / M, -k * x) * advanced.col(j).transpose();
    }
  }
  return state;
}

StateVector spectral_evolve(const WalkConfig& config) {
  return spectral_evolve(config, MomentumGrid::for_steps(config.steps));
}

Eigen::VectorXcd dominant_term_amplitude(int n, int steps, int x, const MomentumGrid& grid) {
  if (n < 1 || n > max_qubits) throw std::domain_error("dominant_term_amplitude: n out of range");
  if (n % 2 != 0) {
    throw std::domain_error("dominant_term_amplitude: no flat-phase branch for odd n");
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  const int half_n = n / 2;
  // lambda_plus * lambda_minus = -1, so every flat-phase branch carries
  // Lambda^T = (-1)^(T n/2).
  const double sign = ((static_cast<long long>(steps) * half_n) % 2 == 0) ? 1.0 : -1.0;

  Eigen::MatrixXcd per_k(dim, grid.num_points);
  parallel_for(static_cast<std::size_t>(grid.num_points), [&](std::size_t j) {
    const double k = grid.point(static_cast<int>(j));
    SpectralEntry entry;
    entry.k = k;
    const double c = std::cos(k / 2.0);
    const double root = std::sqrt(1.0 + c * c);
    entry.gamma_plus = -c + root;
    entry.gamma_minus = -c - root;
    entry.norm_plus = 1.0 + entry.gamma_plus * entry.gamma_plus;
    entry.norm_minus = 1.0 + entry.gamma_minus * entry.gamma_minus;
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != half_n) continue;
      BranchLabel branch{n, mask};
      acc += branch_overlap(entry, branch) * branch_vector(entry, n, mask);
    }
    per_k.col(static_cast<Eigen::Index>(j)) = std::polar(1.0, -k * x) * acc;
  });

  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(dim);
  for (int j = 0; j < grid.num_points; ++j) {
    total += per_k.col(j);
  }
  return (sign / grid.num_points) * total;
}

double front_velocity(int n, int samples) {
  if (samples < 2) throw std::domain_error("front_velocity: need at least two samples");
  const CoinOperator coin = build_coin(n);
  const Eigen::Index dim = coin.dim();
  std::vector<double> best(static_cast<std::size_t>(samples), 0.0);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t j) {
    const double k = two_pi * static_cast<double>(j) / samples;
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(momentum_walk_operator(coin, k), true);
    // d(arg Lambda_b)/dk = |V_b[0]|^2 - |V_b[last]|^2 for a unitary symbol
    // whose k-dependence sits in the two moving rows.
    double local = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      const double v =
          std::norm(schur.matrixU()(0, b)) - std::norm(schur.matrixU()(dim - 1, b));
      local = std::max(local, std::abs(v));
    }
    best[j] = local;
  });
  double out = 0.0;
  for (double v : best) out = std::max(out, v);
  return out;
}

}  // namespace entwalk
