#include "occbloom/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "occbloom/analytics.hpp"
#include "occbloom/errors.hpp"
#include "occbloom/hashing.hpp"
#include "occbloom/occupancy.hpp"

namespace occbloom {

namespace {

constexpr char kInsertTag = 0x01;
constexpr char kProbeTag = 0x02;

void append_le64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double z_score(double observed, double expected, double se) {
  const double diff = observed - expected;
  if (se > 0) return diff / se;
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(expected))) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string trial_element(std::uint64_t rng_seed, bool probe, std::uint64_t trial,
                          std::uint64_t index) {
  const char tag = probe ? kProbeTag : kInsertTag;
  std::string counter(1, tag);
  append_le64(counter, trial);
  append_le64(counter, index);
  BlockStream stream(seed_from_u64(rng_seed), counter);
  std::string element(1, tag);
  append_le64(element, stream.next());
  append_le64(element, stream.next());
  return element;
}

TrialOutcomes run_trials(const TrialConfig& config) {
  config.params.validate();
  if (config.trials == 0) throw DomainError("at least one trial is required");
  TrialOutcomes out;
  out.positives.assign(config.trials, 0);
  out.bit_sums.assign(config.trials, 0);

  auto run_range = [&](unsigned begin, unsigned end) {
    for (unsigned t = begin; t < end; ++t) {
      BloomFilter filter(config.params);
      for (unsigned i = 0; i < config.n; ++i) {
        filter.insert(trial_element(config.rng_seed, false, t, i));
      }
      out.bit_sums[t] = filter.bit_sum();
      std::uint64_t hits = 0;
      for (unsigned j = 0; j < config.probes; ++j) {
        if (filter.query(trial_element(config.rng_seed, true, t, j))) ++hits;
      }
      out.positives[t] = hits;
    }
  };

  unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1U, config.trials);
  if (workers == 1) {
    run_range(0, config.trials);
    return out;
  }
  // Each worker owns a contiguous block of trials and writes only its own
  // slots, so the merged result does not depend on scheduling.
  std::vector<std::thread> pool;
  const unsigned chunk = (config.trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const unsigned begin = w * chunk;
    const unsigned end = std::min(config.trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_range, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

FprEstimate summarize_fpr(const TrialConfig& config, const TrialOutcomes& outcomes) {
  const std::uint64_t total = static_cast<std::uint64_t>(config.trials) * config.probes;
  if (total == 0) throw DomainError("empirical FPR needs trials * probes >= 1");
  FprEstimate e;
  e.total_probes = total;
  std::vector<double> rates;
  rates.reserve(outcomes.positives.size());
  for (std::uint64_t p : outcomes.positives) {
    e.positives += p;
    rates.push_back(static_cast<double>(p) / config.probes);
  }
  e.rate = static_cast<double>(e.positives) / static_cast<double>(total);
  e.binomial_std_error = std::sqrt(e.rate * (1.0 - e.rate) / static_cast<double>(total));
  e.std_error = rates.size() >= 2
                    ? sample_sd(rates, e.rate) / std::sqrt(static_cast<double>(rates.size()))
                    : e.binomial_std_error;
  return e;
}

FprEstimate empirical_fpr(const TrialConfig& config) {
  if (static_cast<std::uint64_t>(config.trials) * config.probes == 0) {
    throw DomainError("empirical FPR needs trials * probes >= 1");
  }
  return summarize_fpr(config, run_trials(config));
}

std::vector<double> bit_sum_pmf(const FilterParams& params, unsigned n) {
  params.validate();
  const auto m = static_cast<unsigned>(params.m);
  std::vector<double> pmf(m + 1, 0.0);
  for (unsigned x = 0; x <= m; ++x) {
    pmf[x] = params.variant == FilterVariant::Classic
                 ? committee_pmf(m, n, params.k, x).to_double()
                 : classic_pmf(m, static_cast<unsigned long>(n) * params.k, x).to_double();
  }
  return pmf;
}

OccupancyHistogram summarize_occupancy(const TrialConfig& config, const TrialOutcomes& outcomes) {
  OccupancyHistogram h;
  h.trials = config.trials;
  std::vector<double> sums;
  sums.reserve(outcomes.bit_sums.size());
  for (std::uint64_t b : outcomes.bit_sums) {
    ++h.counts[b];
    sums.push_back(static_cast<double>(b));
  }
  double total = 0.0;
  for (double s : sums) total += s;
  h.mean = total / static_cast<double>(sums.size());
  h.mean_std_error = sample_sd(sums, h.mean) / std::sqrt(static_cast<double>(sums.size()));

  const std::vector<double> pmf = bit_sum_pmf(config.params, config.n);
  double exact_mean = 0.0;
  for (std::size_t x = 0; x < pmf.size(); ++x) exact_mean += static_cast<double>(x) * pmf[x];
  h.exact_mean = exact_mean;

  // Pool adjacent bit sums until each bin expects at least five trials; a
  // short tail folds into the last full bin.
  std::vector<std::pair<double, double>> bins;  // (expected, observed)
  double open_expected = 0.0;
  double open_observed = 0.0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    open_expected += pmf[x] * config.trials;
    auto it = h.counts.find(x);
    if (it != h.counts.end()) open_observed += static_cast<double>(it->second);
    if (open_expected >= 5.0) {
      bins.emplace_back(open_expected, open_observed);
      open_expected = open_observed = 0.0;
    }
  }
  if (open_expected > 0.0 || open_observed > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(open_expected, open_observed);
    } else {
      bins.back().first += open_expected;
      bins.back().second += open_observed;
    }
  }
  h.chi_square = 0.0;
  for (const auto& [expected, observed] : bins) {
    if (expected > 0.0) h.chi_square += (observed - expected) * (observed - expected) / expected;
  }
  h.degrees_of_freedom = bins.empty() ? 0 : static_cast<unsigned>(bins.size() - 1);
  if (h.degrees_of_freedom == 0) {
    h.p_value = 1.0;
  } else {
    boost::math::chi_squared dist(h.degrees_of_freedom);
    h.p_value = boost::math::cdf(boost::math::complement(dist, h.chi_square));
  }
  return h;
}

OccupancyHistogram occupancy_histogram(const TrialConfig& config) {
  return summarize_occupancy(config, run_trials(config));
}

std::vector<TrialConfig> validation_configs(unsigned trials, unsigned probes,
                                            std::uint64_t rng_seed) {
  struct Shape {
    unsigned m, n, k;
  };
  static constexpr Shape kShapes[] = {{16, 4, 2},  {16, 2, 4},  {32, 8, 3},
                                      {64, 8, 5},  {64, 16, 3}, {128, 16, 6}};
  std::vector<TrialConfig> out;
  std::uint64_t index = 0;
  for (const Shape& s : kShapes) {
    for (FilterVariant v : {FilterVariant::Standard, FilterVariant::Classic}) {
      TrialConfig c;
      c.params.m = s.m;
      c.params.k = s.k;
      c.params.variant = v;
      c.params.seed = seed_from_u64(0x6f63630000000000ULL + index);
      c.n = s.n;
      c.trials = trials;
      c.probes = probes;
      c.rng_seed = rng_seed + index;
      out.push_back(c);
      ++index;
    }
  }
  return out;
}

ValidationRow validate(const TrialConfig& config) {
  ValidationRow row;
  row.config = config;
  const TrialOutcomes outcomes = run_trials(config);
  row.exact_fpr = fpr_exact(config.params.variant, static_cast<unsigned>(config.params.m),
                            config.n, config.params.k)
                      .to_double();
  row.fpr = summarize_fpr(config, outcomes);
  row.fpr_z = z_score(row.fpr.rate, row.exact_fpr, row.fpr.std_error);
  row.occupancy = summarize_occupancy(config, outcomes);
  row.mean_z = z_score(row.occupancy.mean, row.occupancy.exact_mean, row.occupancy.mean_std_error);
  return row;
}

ValidationReport run_validation(const std::vector<TrialConfig>& configs) {
  ValidationReport report;
  for (const auto& c : configs) {
    ValidationRow row = validate(c);
    for (double z : {row.fpr_z, row.mean_z}) {
      if (std::abs(z) > 4.0) ++report.beyond_4se;
      if (std::abs(z) > 6.0) ++report.beyond_6se;
    }
    if (row.occupancy.p_value <= 1e-4) ++report.chi_square_failures;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_csv_header(std::ostream& out) { out << kSimulationCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const ValidationRow& row) {
  const auto& c = row.config;
  out << c.params.m << ',' << c.n << ',' << c.params.k << ',' << to_string(c.params.variant)
      << ',' << format_double(row.exact_fpr) << ',' << format_double(row.fpr.rate) << ','
      << format_double(row.fpr.std_error) << ',' << format_double(row.fpr_z) << '\n';
}

ConjectureReport conjecture_scan(const ScanOptions& options) {
  ConjectureReport report;
  const double ln2 = std::log(2.0);
  for (unsigned m = std::max(1U, options.m_min); m <= options.m_max; ++m) {
    for (unsigned n = std::max(1U, options.n_min); n <= options.n_max; ++n) {
      OrderingRow row;
      row.m = m;
      row.n = n;
      const OptimalK c = optimal_k_exact(FilterVariant::Classic, m, n);
      const OptimalK s = optimal_k_exact(FilterVariant::Standard, m, n);
      row.classic_k = c.k;
      row.classic_k_last = c.k_last;
      row.standard_k = s.k;
      row.standard_k_last = s.k_last;
      row.estimate = static_cast<double>(m) / n * ln2;
      row.small_ratio = static_cast<double>(m) * ln2 < static_cast<double>(n);
      if (row.small_ratio) {
        row.passed = c.k == 1 && s.k == 1;
        if (!row.passed) ++report.small_ratio_violations;
      } else {
        // A tie in k* satisfies an inequality if any minimizer does.
        const double half_ratio = static_cast<double>(m) / (2.0 * n);
        row.lower = std::floor(half_ratio) <= c.k_last;
        row.middle = c.k <= s.k_last;
        row.upper = s.k <= std::ceil(row.estimate);
        row.literal = half_ratio <= c.k_last && row.middle && s.k <= row.estimate;
        row.passed = row.lower && row.middle && row.upper;
        if (!row.passed) ++report.ordering_violations;
        if (!row.literal) ++report.literal_violations;
      }
      report.ordering.push_back(row);
    }
  }

  const unsigned peak_top = std::min(options.m_max, options.peak_m_max);
  for (unsigned m = std::max(4U, options.m_min); m <= peak_top; ++m) {
    double previous = peak_efficiency(FilterVariant::Classic, m, 1).epsilon;
    for (unsigned k = 1; 2 * k + 2 <= m; ++k) {
      const double next = peak_efficiency(FilterVariant::Classic, m, k + 1).epsilon;
      PeakRow row{m, k, previous, next, previous < next};
      if (!row.passed) ++report.peak_violations;
      report.peaks.push_back(row);
      previous = next;
    }
  }
  return report;
}

void write_scan_csv(std::ostream& out, const ConjectureReport& report) {
  out << "m,n,k_classic,k_classic_last,k_standard,k_standard_last,estimate,branch,lower,middle,"
         "upper,literal,result\n";
  for (const auto& r : report.ordering) {
    out << r.m << ',' << r.n << ',' << r.classic_k << ',' << r.classic_k_last << ','
        << r.standard_k << ',' << r.standard_k_last << ',' << format_double(r.estimate) << ','
        << (r.small_ratio ? "unit" : "ordered") << ',' << r.lower << ',' << r.middle << ','
        << r.upper << ',' << r.literal << ',' << (r.passed ? "pass" : "FAIL") << '\n';
  }
  if (!report.peaks.empty()) {
    out << "\nm,k,peak_epsilon_k,peak_epsilon_k_plus_1,result\n";
    for (const auto& r : report.peaks) {
      out << r.m << ',' << r.k << ',' << format_double(r.epsilon_k) << ','
          << format_double(r.epsilon_next) << ',' << (r.passed ? "pass" : "FAIL") << '\n';
    }
  }
}

}  // namespace occbloom
