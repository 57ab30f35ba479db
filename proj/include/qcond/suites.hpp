#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcond/json_io.hpp"

namespace qcond {

enum class SuiteKind {
  /// Every trial must satisfy the identity within the suite's threshold.
  Identity,
  /// Each trial searches for a counterexample; the suite succeeds by finding them.
  Search,
};

struct SuiteInfo {
  std::string name;
  SuiteKind kind;
  std::vector<std::size_t> default_dims;
  std::size_t default_trials;
  std::string description;
};

const std::vector<SuiteInfo>& suite_catalog();
/// Throws UnknownSuite.
const SuiteInfo& suite_info(const std::string& name);

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t dim = 0;
  double residual = 0.0;
  json witness;
};

struct SuiteReport {
  std::string suite;
  SuiteKind kind = SuiteKind::Identity;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  std::size_t trials = 0;  // per dim
  std::size_t passes = 0;
  std::size_t skipped = 0;  // sub-checks skipped for a near-zero conditioning probability
  double max_residual = 0.0;
  std::vector<TrialRecord> failures;
  std::vector<TrialRecord> witnesses;  // search suites only
  bool ok = true;

  json to_json() const;
};

/// Runs `trials` trials for each dim. Trial t at dim d draws from its own
/// generator seeded by (seed, d, t), so reports are reproducible bit-for-bit.
SuiteReport run_suite(const std::string& name, const std::vector<std::size_t>& dims, std::size_t trials,
                      std::uint64_t seed, const Tolerance& tol = {});

}  // namespace qcond
