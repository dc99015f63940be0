#pragma once

// Acceptance checks shared by the `occbloom verify` command and the
// acceptance test binary. Each criterion reports pass/fail with a one-line
// detail and its wall time.

#include <cstdint>
#include <string>
#include <vector>

namespace occbloom {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  unsigned mc_trials = 10000;
  unsigned mc_probes = 100;
  std::uint64_t seed = 20240601;
  /// When non-empty, criteria that produce artifacts (the conjecture scan,
  /// the Monte Carlo table) write CSV files here.
  std::string artifact_dir;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const VerifyOptions& options = {});

/// Suite names: reference-values, oracle-small, invariants, montecarlo,
/// asymptotics, valley, conjectures, all.
const std::vector<std::string>& suite_names();
/// Criterion ids in a suite; throws DomainError for unknown names.
std::vector<int> suite_criteria(const std::string& suite);

/// "PASS"/"FAIL" line for one result.
std::string format_result(const CriterionResult& result);

}  // namespace occbloom
