#include "entwalk/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entwalk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_sloped(const BranchLabel& branch, const char* who) {
  if (branch.spread() == 0) {
    throw std::domain_error(std::string(who) + ": flat-phase branch (m = q)");
  }
}

double phi_of(double k) { return 2.0 * std::asin(std::sin(k / 2.0) / std::sqrt(2.0)); }

double phase_slope(int d, double x_over_t, double k) {
  const double s = std::sin(k / 2.0);
  return d * std::cos(k / 2.0) / (2.0 * std::sqrt(2.0 - s * s)) - x_over_t;
}

}  // namespace

double branch_phase(const BranchLabel& branch, double x_over_t, double k) {
  require_sloped(branch, "branch_phase");
  return 0.5 * branch.spread() * phi_of(k) - x_over_t * k;
}

PhaseDerivatives phase_derivatives(const BranchLabel& branch, double x_over_t, double k) {
  require_sloped(branch, "phase_derivatives");
  const int d = branch.spread();
  PhaseDerivatives out;
  out.phi1 = phase_slope(d, x_over_t, k);
  out.phi2 = -d * std::sin(k / 2.0) /
             (std::sqrt(2.0) * std::pow(3.0 + std::cos(k), 1.5));
  return out;
}

std::vector<double> stationary_point_candidates(const BranchLabel& branch, double x_over_t) {
  require_sloped(branch, "stationary_point_candidates");
  const int d = branch.spread();
  const double den = d * d - 4.0 * x_over_t * x_over_t;
  std::vector<double> candidates;
  if (den <= 0.0) return candidates;
  const double base = 2.0 * x_over_t / std::sqrt(den);
  for (double sign : {1.0, -1.0}) {
    const double c = sign * base;
    if (std::abs(c) > 1.0) continue;
    const double k0 = 2.0 * std::acos(c);
    bool dup = false;
    for (double other : candidates) dup = dup || std::abs(other - k0) < 1e-12;
    if (!dup) candidates.push_back(k0);
  }
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

std::vector<double> stationary_points(const BranchLabel& branch, double x_over_t) {
  const int d = branch.spread();
  std::vector<double> roots;
  for (double k0 : stationary_point_candidates(branch, x_over_t)) {
    if (std::abs(phase_slope(d, x_over_t, k0)) > 1e-8) continue;  // mirror-family value
    // The slope is monotone in k, so a sign-changing bracket around the
    // closed-form value pins the root; polish to 1e-12.
    double lo = std::max(0.0, k0 - 1e-3), hi = std::min(two_pi, k0 + 1e-3);
    double flo = phase_slope(d, x_over_t, lo), fhi = phase_slope(d, x_over_t, hi);
    for (int grow = 0; grow < 40 && flo * fhi > 0.0; ++grow) {
      lo = std::max(0.0, lo - (k0 - lo));
      hi = std::min(two_pi, hi + (hi - k0));
      flo = phase_slope(d, x_over_t, lo);
      fhi = phase_slope(d, x_over_t, hi);
      if (lo == 0.0 && hi == two_pi) break;
    }
    double refined = k0;
    if (flo * fhi <= 0.0) {
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = phase_slope(d, x_over_t, mid);
        if (flo * fmid <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      refined = 0.5 * (lo + hi);
    }
    if (std::abs(phase_slope(d, x_over_t, refined)) <= 1e-10) {
      bool dup = false;
      for (double other : roots) dup = dup || std::abs(other - refined) < 1e-9;
      if (!dup) roots.push_back(refined);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Eigen::VectorXcd stationary_phase_amplitude(const BranchLabel& branch, int steps, double x) {
  require_sloped(branch, "stationary_phase_amplitude");
  if (steps <= 0) throw std::domain_error("stationary_phase_amplitude: need steps > 0");
  const Eigen::Index dim = Eigen::Index(1) << branch.n;
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(dim);
  const double alpha = x / steps;
  // Lambda^T = (-1)^{Tq} e^{iT(m-q)phi/2}; the sign rides outside the phase.
  const double sign =
      ((static_cast<long long>(steps) * branch.q()) % 2 == 0) ? 1.0 : -1.0;

  for (double k0 : stationary_points(branch, alpha)) {
    const PhaseDerivatives pd = phase_derivatives(branch, alpha, k0);
    if (std::abs(pd.phi2) < 1e-12) {
      // Degenerate point (cone edge): the quadratic phase model breaks down.
      return branch_amplitude_quadrature(
          branch, steps, x,
          MomentumGrid::with_points(std::max(4096, 32 * steps * std::abs(branch.spread()))));
    }
    const SpectralEntry entry = closed_form_eigensystem(branch.n, k0);
    const Eigen::VectorXcd g =
        branch_overlap(entry, branch) * entry.eigenvectors.col(branch.selection);
    const double phase = steps * branch_phase(branch, alpha, k0) +
                         (pd.phi2 > 0.0 ? 1.0 : -1.0) * std::numbers::pi / 4.0;
    const double envelope =
        std::sqrt(two_pi / (steps * std::abs(pd.phi2))) / two_pi;
    total += sign * envelope * std::polar(1.0, phase) * g;
  }
  return total;
}

Eigen::VectorXcd branch_amplitude_quadrature(const BranchLabel& branch, int steps, double x,
                                             const MomentumGrid& grid) {
  const Eigen::Index dim = Eigen::Index(1) << branch.n;
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(dim);
  for (int j = 0; j < grid.num_points; ++j) {
    const double k = grid.point(j);
    const SpectralEntry entry = closed_form_eigensystem(branch.n, k);
    cplx advance = entry.eigenvalues[branch.selection];
    cplx acc(1.0, 0.0);
    for (int t = 0; t < steps; ++t) acc *= advance;
    total += acc * branch_overlap(entry, branch) *
             std::polar(1.0, -k * x) * entry.eigenvectors.col(branch.selection);
  }
  return total / static_cast<double>(grid.num_points);
}

StationaryPhaseResult stationary_phase_analysis(const BranchLabel& branch, int steps,
                                                const std::vector<double>& positions) {
  StationaryPhaseResult result;
  result.branch = branch;
  result.group_velocity_bound = branch.spread() / (2.0 * std::sqrt(2.0));
  if (!positions.empty()) {
    const double alpha = positions.front() / steps;
    result.stationary_points = stationary_points(branch, alpha);
    for (double k0 : result.stationary_points) {
      result.phase_second_derivative.push_back(phase_derivatives(branch, alpha, k0).phi2);
    }
  }
  result.positions = positions;
  result.predicted_amplitude.reserve(positions.size());
  for (double x : positions) {
    result.predicted_amplitude.push_back(stationary_phase_amplitude(branch, steps, x));
  }
  return result;
}

}  // namespace entwalk
