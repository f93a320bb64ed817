#pragma once

#include <vector>

#include <Eigen/Dense>

#include "entwalk/spectral.hpp"

namespace entwalk {

// Phase of a tensor-power branch along its inverse transform,
// Phi(k) = ((m-q)/2) phi(k) - (x/T) k, and its first two derivatives.
struct PhaseDerivatives {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

// Throws std::domain_error for flat-phase branches (m = q).
double branch_phase(const BranchLabel& branch, double x_over_t, double k);
PhaseDerivatives phase_derivatives(const BranchLabel& branch, double x_over_t, double k);

// Closed-form candidates k0 = 2 acos(+-2a / sqrt(d^2 - 4a^2)) with a = x/T,
// d = m-q; both sign choices, unverified. Empty outside the branch cone
// |x/T| < |d|/(2 sqrt(2)).
std::vector<double> stationary_point_candidates(const BranchLabel& branch, double x_over_t);

// Candidates filtered to genuine roots of Phi' and polished by bisection to
// 1e-12; each returned k0 satisfies |Phi'(k0)| <= 1e-10.
std::vector<double> stationary_points(const BranchLabel& branch, double x_over_t);

// One branch's stationary-phase contribution to the amplitude at position x
// after `steps` steps (coin-component vector):
//   (1/2pi) sqrt(2pi/(T|Phi''(k0)|)) g(k0) e^{i(T Phi(k0) + sgn(Phi'') pi/4)}
// summed over the branch's stationary points, where g(k) = <V(k),psi0> V(k)
// and Lambda^T contributes its (-1)^{Tq} sign. x may be half-integral (the
// tensor-power lattice steps in halves). Returns zero outside the cone.
Eigen::VectorXcd stationary_phase_amplitude(const BranchLabel& branch, int steps, double x);

// Degenerate stationary point (Phi'' ~ 0) encountered; amplitude falls back
// to direct quadrature of the branch integrand on a dense grid.
Eigen::VectorXcd branch_amplitude_quadrature(const BranchLabel& branch, int steps, double x,
                                             const MomentumGrid& grid);

struct StationaryPhaseResult {
  BranchLabel branch;
  std::vector<double> stationary_points;
  std::vector<double> phase_second_derivative;  // Phi'' at each point
  std::vector<double> positions;                // requested x values
  std::vector<Eigen::VectorXcd> predicted_amplitude;  // one vector per x
  double group_velocity_bound = 0.0;            // (m-q)/(2 sqrt(2))
};

// Batch evaluation over positions; the root and curvature fields describe the
// first requested position (the roots move with x).
StationaryPhaseResult stationary_phase_analysis(const BranchLabel& branch, int steps,
                                                const std::vector<double>& positions);

}  // namespace entwalk
