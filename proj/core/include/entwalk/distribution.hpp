#pragma once

#include <Eigen/Dense>

namespace entwalk {

// Probability weights over a contiguous window of lattice positions.
// weights[i] belongs to position position_offset + i.
struct ProbabilityDistribution {
  Eigen::VectorXd weights;
  int position_offset = 0;

  Eigen::Index size() const { return weights.size(); }
  int position_of(Eigen::Index i) const { return position_offset + static_cast<int>(i); }
  int min_position() const { return position_offset; }
  int max_position() const { return position_of(weights.size() - 1); }

  // Zero outside the stored window.
  double at(int x) const {
    Eigen::Index i = static_cast<Eigen::Index>(x) - position_offset;
    return (i >= 0 && i < weights.size()) ? weights[i] : 0.0;
  }

  double total() const { return weights.sum(); }

  // Throws std::domain_error on negative weights or a total off 1 beyond tol.
  void validate(double tol = 1e-10) const;
};

}  // namespace entwalk
