#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "entwalk/walk.hpp"

namespace entwalk {

// Uniform grid k_j = 2*pi*j/M over one momentum period.
struct MomentumGrid {
  int num_points = 0;

  double point(int j) const;
  // Smallest power of two >= 4*(steps+1); always enough for an exact
  // band-limited inversion over [-steps, steps].
  static MomentumGrid for_steps(int steps);
  static MomentumGrid with_points(int m);
};

// Branch of the tensor-power eigensystem. Bit i of `selection` set means the
// (i-th from the left) tensor slot carries the minus eigenpair; m counts plus
// slots, q = n - m.
struct BranchLabel {
  int n = 1;
  unsigned selection = 0;

  int q() const { return __builtin_popcount(selection); }
  int m() const { return n - q(); }
  int spread() const { return m() - q(); }

  static BranchLabel extremal_plus(int n) { return {n, 0u}; }
  static BranchLabel extremal_minus(int n) { return {n, (1u << n) - 1u}; }
  static std::vector<BranchLabel> all(int n);
};

// Closed-form spectral data of the tensor-power step operator at one k.
struct SpectralEntry {
  double k = 0.0;
  double phi = 0.0;                       // 2 asin(sin(k/2)/sqrt(2))
  cplx lambda_plus{1.0, 0.0};             // +e^{+i phi/2}
  cplx lambda_minus{-1.0, 0.0};           // -e^{-i phi/2}
  double gamma_plus = 0.0;                // -cos(k/2) + sqrt(1+cos^2(k/2))
  double gamma_minus = 0.0;               // -cos(k/2) - sqrt(1+cos^2(k/2))
  double norm_plus = 0.0;                 // 1 + gamma_plus^2
  double norm_minus = 0.0;                // 1 + gamma_minus^2
  Eigen::VectorXcd eigenvalues;           // indexed by BranchLabel::selection
  Eigen::MatrixXcd eigenvectors;          // column j pairs with eigenvalues[j]
};

struct SpectralSystem {
  int n = 1;
  MomentumGrid grid;
  std::vector<SpectralEntry> entries;
};

// n-fold tensor power of diag(e^{ik/2}, e^{-ik/2}) * H. This is the walk's
// momentum symbol only for n <= 2; see momentum_walk_operator for the exact
// symbol at every n.
Eigen::MatrixXcd momentum_step_operator(int n, double k);

// Momentum symbol of the actual shift∘coin step: diag(e^{ik},1,..,1,e^{-ik})
// times the coin (for n=1 the stay branch is absent and the diagonal is
// (e^{ik}, e^{-ik})).
Eigen::MatrixXcd momentum_walk_operator(int n, double k);
Eigen::MatrixXcd momentum_walk_operator(const CoinOperator& coin, double k);

// Closed-form eigensystem of momentum_step_operator(n, k). Every eigenpair is
// verified against the numerically built operator; a residual beyond 1e-8
// throws a spectral-consistency error naming the failing pair.
SpectralEntry closed_form_eigensystem(int n, double k);

SpectralSystem build_spectral_system(int n, const MomentumGrid& grid);

// <V_branch(k), psi0> for the standard entangled start, in closed form.
cplx branch_overlap(const SpectralEntry& entry, const BranchLabel& branch);

// Momentum-space evolution with the exact symbol: expand the initial state in
// the eigenbasis at each k, advance each eigenpair by Lambda^T, and invert the
// transform. Matches evolve() on the same config. Throws std::domain_error
// when the grid has fewer than 2*steps+1 points.
StateVector spectral_evolve(const WalkConfig& config, const MomentumGrid& grid);
StateVector spectral_evolve(const WalkConfig& config);

// Partial amplitude at position x carried by the flat-phase branches (m = q)
// of the tensor-power system, for the standard entangled start. Even n only.
Eigen::VectorXcd dominant_term_amplitude(int n, int steps, int x, const MomentumGrid& grid);

// Largest magnitude of the band group velocity d(arg Lambda)/dk of the exact
// symbol, scanned over `samples` momenta. The ballistic front sits near
// velocity * steps.
double front_velocity(int n, int samples = 4096);

}  // namespace entwalk
