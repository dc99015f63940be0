#pragma once

// Randomized checks that tie live filters to the exact analytics.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "occbloom/filter.hpp"

namespace occbloom {

struct TrialConfig {
  FilterParams params;
  unsigned n = 0;         // items inserted per trial
  unsigned trials = 1;
  unsigned probes = 0;    // never-inserted elements queried per trial
  std::uint64_t rng_seed = 0;
  unsigned workers = 0;   // 0: one per hardware thread
};

/// Element `index` of trial `trial`: a tag byte (1 for inserted items, 2 for
/// probes, so the two sets never meet) followed by 16 bytes from a
/// counter-keyed SipHash stream seeded by rng_seed.
std::string trial_element(std::uint64_t rng_seed, bool probe, std::uint64_t trial,
                          std::uint64_t index);

/// Raw per-trial outcomes, in trial order regardless of worker count.
struct TrialOutcomes {
  std::vector<std::uint64_t> positives;  // false positives among the probes
  std::vector<std::uint64_t> bit_sums;
};

TrialOutcomes run_trials(const TrialConfig& config);

struct FprEstimate {
  double rate = 0;
  /// Standard error of the mean of per-trial rates. Probes within one trial
  /// share a filter and are correlated, so this is the honest error bar for
  /// comparing against the expected FPR.
  double std_error = 0;
  /// sqrt(rate (1 - rate) / total probes), which ignores that correlation.
  double binomial_std_error = 0;
  std::uint64_t positives = 0;
  std::uint64_t total_probes = 0;
};

/// Requires trials * probes >= 1 (DomainError otherwise).
FprEstimate empirical_fpr(const TrialConfig& config);
FprEstimate summarize_fpr(const TrialConfig& config, const TrialOutcomes& outcomes);

struct OccupancyHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;  // bit sum -> trials
  unsigned trials = 0;
  double mean = 0;
  double mean_std_error = 0;
  double exact_mean = 0;
  /// Pearson statistic against the exact p.m.f., with adjacent bins pooled
  /// until each expects at least 5 trials.
  double chi_square = 0;
  unsigned degrees_of_freedom = 0;
  double p_value = 1;
};

OccupancyHistogram occupancy_histogram(const TrialConfig& config);
OccupancyHistogram summarize_occupancy(const TrialConfig& config, const TrialOutcomes& outcomes);

/// Exact bit-sum p.m.f. of a filter holding n items: classic occupancy of
/// nk balls for standard filters, committee occupancy for classic ones.
std::vector<double> bit_sum_pmf(const FilterParams& params, unsigned n);

struct ValidationRow {
  TrialConfig config;
  double exact_fpr = 0;
  FprEstimate fpr;
  double fpr_z = 0;
  OccupancyHistogram occupancy;
  double mean_z = 0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  unsigned beyond_4se = 0;  // z-scores (FPR and mean) with |z| > 4
  unsigned beyond_6se = 0;
  unsigned chi_square_failures = 0;  // p <= 1e-4
  bool passed() const { return beyond_6se == 0 && beyond_4se <= 1 && chi_square_failures == 0; }
};

/// The fixed twelve-configuration suite (m in {16, 32, 64, 128}, both
/// variants).
std::vector<TrialConfig> validation_configs(unsigned trials, unsigned probes,
                                            std::uint64_t rng_seed);
ValidationRow validate(const TrialConfig& config);
ValidationReport run_validation(const std::vector<TrialConfig>& configs);

inline constexpr const char* kSimulationCsvHeader =
    "m,n,k,variant,exact,empirical,std_err,z_score";
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ValidationRow& row);

// Scan of the claimed ordering of optimal hash counts,
//   m/(2n) <= k*_C <= k*_S <= (m/n) ln 2 when m/n >= 1/ln 2,
//   k*_C = k*_S = 1 otherwise,
// and of the claim that classic peak efficiency grows with k.

struct OrderingRow {
  unsigned m = 0;
  unsigned n = 0;
  unsigned classic_k = 0, classic_k_last = 0;
  unsigned standard_k = 0, standard_k_last = 0;
  double estimate = 0;       // (m/n) ln 2
  bool small_ratio = false;  // m/n < 1/ln 2
  // Integer reading of each inequality, as k* is an integer:
  // floor(m/(2n)) <= k*_C, k*_C <= k*_S, k*_S <= ceil((m/n) ln 2).
  bool lower = true;
  bool middle = true;
  bool upper = true;
  /// The bounds m/(2n) and (m/n) ln 2 taken literally as reals.
  bool literal = true;
  bool passed = true;
};

struct PeakRow {
  unsigned m = 0;
  unsigned k = 0;
  double epsilon_k = 0;
  double epsilon_next = 0;
  bool passed = true;
};

struct ScanOptions {
  unsigned m_min = 1, m_max = 256;
  unsigned n_min = 1, n_max = 32;
  /// Peak-efficiency monotonicity is checked for m up to this bound (0: skip).
  unsigned peak_m_max = 0;
};

struct ConjectureReport {
  std::vector<OrderingRow> ordering;
  std::vector<PeakRow> peaks;
  unsigned ordering_violations = 0;    // integer reading, rows with m/n >= 1/ln 2
  unsigned literal_violations = 0;     // real-valued reading of the same rows
  unsigned small_ratio_violations = 0;
  unsigned peak_violations = 0;
};

/// Never throws on a failed claim; failures are counted in the report.
/// Ties in k* count as satisfying an inequality if any minimizer does.
ConjectureReport conjecture_scan(const ScanOptions& options);

void write_scan_csv(std::ostream& out, const ConjectureReport& report);

}  // namespace occbloom
