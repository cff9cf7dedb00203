#pragma once

// Randomized, exact verification suites. Criterion ids 1..8:
//   1 decomposition replay, 2 classical extremal projector, 3 partial
//   projectors, 4 quantum extremal projector, 5 sl2 closed forms,
//   6 quantum Zhelobenko operators, 7 classical Zhelobenko operators,
//   8 combinatorics and structure constants.

#include <cstdint>
#include <string>
#include <vector>

namespace lie {

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  /// Adds B3 and C3 to the classical projector suites.
  bool slow = false;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  long checks = 0;
  /// First failure, or the exception that stopped the suite.
  std::string detail;
  double seconds = 0;
};

/// Suite names in id order ("replay", "classical-projector", ...).
const std::vector<std::string>& suite_names();
/// Id for a name or a decimal id string; 0 when unknown.
int suite_id(const std::string& name);

SuiteResult run_suite(int id, const SuiteOptions& options = {});

}  // namespace lie
