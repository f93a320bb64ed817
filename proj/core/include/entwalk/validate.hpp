#pragma once

#include <string>
#include <vector>

#include "entwalk/walk.hpp"

namespace entwalk {

enum class FaultInjection {
  none,
  coin_scale,  // scales one coin entry, breaking unitarity on purpose
};

struct ValidationOptions {
  int oracle_depth = 4;    // path-sum cross-check up to this many steps
  int max_qubits_checked = 7;
  FaultInjection fault = FaultInjection::none;
};

struct ValidationItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool all_passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

// Reference evolution by explicit enumeration of all coin histories; the
// amplitude of a history is the product of traversed coin entries. Exponential
// in steps, usable only for small n and depth.
StateVector path_sum_reference(const WalkConfig& config);

// Normalization, coin unitarity, path-sum equivalence, eigen-residual,
// symmetry split, and spectral round-trip suites.
ValidationReport run_validation(const ValidationOptions& options);

}  // namespace entwalk
