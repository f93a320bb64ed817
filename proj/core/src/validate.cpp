#include "entwalk/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <utility>

#include "entwalk/metrics.hpp"
#include "entwalk/spectral.hpp"

namespace entwalk {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// The walk loop with an explicit coin operator, bypassing the constructors'
// unitarity guard and the final norm check so that injected faults propagate
// into measurable defects instead of early throws.
StateVector evolve_with_coin(const WalkConfig& config, const CoinOperator& coin) {
  StateVector state = initial_state_vector(config);
  for (int t = 0; t < config.steps; ++t) {
    state = apply_shift(apply_coin(std::move(state), coin));
  }
  return state;
}

CoinOperator coin_for(int n, FaultInjection fault) {
  CoinOperator coin = build_coin(n);
  if (fault == FaultInjection::coin_scale) {
    coin.matrix(0, 0) *= 1.01;
    coin.hadamard_power = false;
  }
  return coin;
}

StateVector production_run(const WalkConfig& config, FaultInjection fault) {
  if (fault == FaultInjection::none) return evolve(config);
  return evolve_with_coin(config, coin_for(config.n, fault));
}

using Check = std::function<void(bool&, std::string&)>;

ValidationItem run_item(const std::string& name, const Check& check) {
  ValidationItem item;
  item.name = name;
  try {
    item.passed = true;
    check(item.passed, item.detail);
  } catch (const std::exception& err) {
    item.passed = false;
    item.detail = err.what();
  }
  return item;
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const ValidationItem& item) { return item.passed; });
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const ValidationItem& item : items) {
    out += item.passed ? "[PASS] " : "[FAIL] ";
    out += item.name;
    if (!item.detail.empty()) {
      out += ": ";
      out += item.detail;
    }
    out += '\n';
  }
  out += all_passed() ? "all checks passed\n" : "validation FAILED\n";
  return out;
}

std::string ValidationReport::to_json() const {
  std::string out = "{\n  \"all_passed\": ";
  out += all_passed() ? "true" : "false";
  out += ",\n  \"items\": [\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += "    {\"name\": \"" + escape(items[i].name) + "\", \"passed\": ";
    out += items[i].passed ? "true" : "false";
    out += ", \"detail\": \"" + escape(items[i].detail) + "\"}";
    out += (i + 1 < items.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

StateVector path_sum_reference(const WalkConfig& config) {
  config.validate();
  const CoinOperator coin = build_coin(config.n, config.coin);
  const Eigen::Index dim = coin.dim();
  double histories = 1.0;
  for (int t = 0; t < config.steps; ++t) histories *= static_cast<double>(dim);
  if (histories * static_cast<double>(dim) > 1e8) {
    throw std::domain_error("path_sum_reference: too many coin histories to enumerate");
  }

  const int T = config.steps;
  StateVector out;
  out.amplitudes = Eigen::MatrixXcd::Zero(2 * T + 1, dim);
  out.position_offset = config.initial_state.origin_position - T;

  const auto displacement = [dim](Eigen::Index c) -> int {
    if (c == 0) return 1;
    if (c == dim - 1) return -1;
    return 0;
  };

  // Walk every coin history c_1..c_T; its amplitude is the product of the
  // traversed coin entries times the initial coin amplitude.
  std::function<void(int, Eigen::Index, int, cplx)> descend =
      [&](int t, Eigen::Index prev, int x, cplx amp) {
        if (t == T) {
          out.amplitudes(x + T, prev) += amp;
          return;
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
          descend(t + 1, c, x + displacement(c), amp * coin.matrix(c, prev));
        }
      };

  const Eigen::VectorXcd& start = config.initial_state.coin_amplitudes;
  for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
    if (std::abs(start[c0]) == 0.0) continue;
    if (T == 0) {
      out.amplitudes(T, c0) += start[c0];
    } else {
      descend(0, c0, 0, start[c0]);
    }
  }
  return out;
}

ValidationReport run_validation(const ValidationOptions& options) {
  if (options.oracle_depth < 1) {
    throw std::domain_error("run_validation: oracle depth must be positive");
  }
  if (options.max_qubits_checked < 1 || options.max_qubits_checked > max_qubits) {
    throw std::domain_error("run_validation: qubit bound out of range");
  }
  const int n_max = options.max_qubits_checked;
  ValidationReport report;

  report.items.push_back(run_item("state normalization", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 1; n <= n_max; ++n) {
      const StateVector state = production_run(WalkConfig::standard(n, 25), options.fault);
      const double defect = std::abs(state.squared_norm() - 1.0);
      if (defect > worst) {
        worst = defect;
        worst_n = n;
      }
    }
    ok = worst <= 1e-10;
    detail = "max |1 - norm^2| = " + fmt(worst) + " at n = " + std::to_string(worst_n) +
             " after 25 steps";
  }));

  report.items.push_back(run_item("coin unitarity", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      const CoinOperator coin = coin_for(n, options.fault);
      const Eigen::MatrixXcd gram = coin.matrix.adjoint() * coin.matrix;
      const double defect =
          (gram - Eigen::MatrixXcd::Identity(coin.dim(), coin.dim())).cwiseAbs().maxCoeff();
      worst = std::max(worst, defect);
    }
    ok = worst <= 1e-12;
    detail = "max |C^dag C - I| = " + fmt(worst) + " over n = 1.." + std::to_string(n_max);
  }));

  report.items.push_back(run_item("path-sum equivalence", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (int n = 1; n <= std::min(3, n_max); ++n) {
      const int depth = n < 3 ? options.oracle_depth : std::min(options.oracle_depth, 5);
      const WalkConfig config = WalkConfig::standard(n, depth);
      const StateVector fast = production_run(config, options.fault);
      const StateVector slow = path_sum_reference(config);
      worst = std::max(worst, (fast.amplitudes - slow.amplitudes).cwiseAbs().maxCoeff());
    }
    ok = worst <= 1e-12;
    detail = "max amplitude gap vs history enumeration = " + fmt(worst) + " at depth " +
             std::to_string(options.oracle_depth);
  }));

  report.items.push_back(run_item("eigenpair residual", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (int n = 1; n <= std::min(6, n_max); ++n) {
      const MomentumGrid grid = MomentumGrid::with_points(64);
      for (int j = 0; j < grid.num_points; ++j) {
        const double k = grid.point(j);
        const SpectralEntry entry = closed_form_eigensystem(n, k);
        const Eigen::MatrixXcd op = momentum_step_operator(n, k);
        const double residual =
            (op * entry.eigenvectors - entry.eigenvectors * entry.eigenvalues.asDiagonal())
                .cwiseAbs()
                .maxCoeff();
        worst = std::max(worst, residual);
      }
    }
    ok = worst <= 1e-8;
    detail = "max |U V - V diag| = " + fmt(worst) + " on a 64-point grid";
  }));

  report.items.push_back(run_item("mirror symmetry split", [&](bool& ok, std::string& detail) {
    double worst_even = 0.0;
    double least_odd = 1.0;
    for (int n = 1; n <= std::min(5, n_max); ++n) {
      const ProbabilityDistribution dist =
          probabilities(evolve(WalkConfig::standard(n, 20)));
      const double defect = symmetry_defect(dist);
      if (n % 2 == 0) {
        worst_even = std::max(worst_even, defect);
      } else {
        least_odd = std::min(least_odd, defect);
      }
    }
    ok = worst_even <= 1e-10 && least_odd > 1e-3;
    detail = "even-n defect <= " + fmt(worst_even) + ", odd-n defect >= " + fmt(least_odd);
  }));

  report.items.push_back(run_item("spectral round-trip", [&](bool& ok, std::string& detail) {
    double worst = 0.0;
    for (int n = 1; n <= std::min(4, n_max); ++n) {
      const WalkConfig config = WalkConfig::standard(n, 16);
      const StateVector direct = evolve(config);
      const StateVector viaK = spectral_evolve(config);
      worst = std::max(worst, (direct.amplitudes - viaK.amplitudes).cwiseAbs().maxCoeff());
    }
    ok = worst <= 1e-10;
    detail = "max amplitude gap vs momentum-space evolution = " + fmt(worst);
  }));

  return report;
}

}  // namespace entwalk
