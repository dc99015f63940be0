#include "occbloom/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "occbloom/analytics.hpp"
#include "occbloom/errors.hpp"
#include "occbloom/montecarlo.hpp"
#include "occbloom/occupancy.hpp"
#include "occbloom/oracle.hpp"

namespace occbloom {

namespace {

// Collects failed expectations; the first few make it into the detail line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_.push_back(what);
  }

  bool ok() const { return failures_ == 0; }
  unsigned checks() const { return checks_; }

  std::string summary() const {
    std::ostringstream s;
    s << checks_ - failures_ << "/" << checks_ << " checks";
    for (const auto& n : notes_) s << "; " << n;
    return s.str();
  }

 private:
  unsigned checks_ = 0;
  unsigned failures_ = 0;
  std::vector<std::string> notes_;
};

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

bool within(double actual, double expected, double tol) { return std::abs(actual - expected) <= tol; }

const char* name(FilterVariant v) { return to_string(v); }

std::filesystem::path artifact_path(const VerifyOptions& options, const std::string& file) {
  std::filesystem::create_directories(options.artifact_dir);
  return std::filesystem::path(options.artifact_dir) / file;
}

// --- 1: m = 64, n = 4 -------------------------------------------------------

CriterionResult optimum_64_4(const VerifyOptions&) {
  Tally t;
  const OptimalK s = optimal_k_exact(FilterVariant::Standard, 64, 4);
  const OptimalK c = optimal_k_exact(FilterVariant::Classic, 64, 4);
  const std::string fs = s.fpr.to_decimal(3);
  const std::string fc = c.fpr.to_decimal(3);
  const std::string fs11 = fpr_standard_exact(64, 4, 11).to_decimal(3);
  const std::string fc11 = fpr_classic_exact(64, 4, 11).to_decimal(3);
  t.expect(s.k == 10, "k*_S=" + std::to_string(s.k) + " (want 10)");
  t.expect(c.k == 9, "k*_C=" + std::to_string(c.k) + " (want 9)");
  t.expect(fs == "6.15e-04", "f*_S=" + fs);
  t.expect(fc == "4.55e-04", "f*_C=" + fc);
  t.expect(fs11 == "6.25e-04", "f_S(k=11)=" + fs11);
  t.expect(fc11 == "4.85e-04", "f_C(k=11)=" + fc11);
  std::ostringstream d;
  d << "k*_S=" << s.k << " f*_S=" << fs << ", k*_C=" << c.k << " f*_C=" << fc
    << ", f_S(11)=" << fs11 << ", f_C(11)=" << fc11 << "; " << t.summary();
  return {1, "optimal k at m=64, n=4", t.ok(), d.str(), 0};
}

// --- 2: m = 1000, n = 20 ----------------------------------------------------

CriterionResult optimum_1000_20(const VerifyOptions&) {
  Tally t;
  const OptimalK s = optimal_k_exact(FilterVariant::Standard, 1000, 20);
  const OptimalK c = optimal_k_exact(FilterVariant::Classic, 1000, 20);
  const double est = optimal_k_estimate(1000, 20);
  t.expect(c.k == 33, "k*_C=" + std::to_string(c.k));
  t.expect(s.k == 34, "k*_S=" + std::to_string(s.k));
  t.expect(fixed(est, 1) == "34.7", "estimate " + fixed(est, 3));
  std::ostringstream d;
  d << "k*_C=" << c.k << ", k*_S=" << s.k << ", (m/n)ln2=" << fixed(est, 2) << "; " << t.summary();
  return {2, "optimal k at m=1000, n=20", t.ok(), d.str(), 0};
}

// --- 3: m = 1024, n = 5 -----------------------------------------------------

CriterionResult optimum_1024_5(const VerifyOptions&) {
  Tally t;
  const double est = optimal_k_estimate(1024, 5);
  const auto k_est = static_cast<unsigned>(std::lround(est));
  t.expect(k_est == 142, "rounded estimate " + std::to_string(k_est));
  std::ostringstream d;
  d << "estimate " << fixed(est, 2);
  struct Expect {
    FilterVariant variant;
    unsigned k;
    double penalty;
    double eff_drop;
  };
  for (const Expect& e : {Expect{FilterVariant::Standard, 133, 15.7, 0.2},
                          Expect{FilterVariant::Classic, 124, 106.9, 0.7}}) {
    const OptimalK best = optimal_k_exact(e.variant, 1024, 5);
    const Rational at_est = fpr_exact(e.variant, 1024, 5, k_est);
    const double penalty = ((at_est / best.fpr).to_double() - 1.0) * 100.0;
    const double eff_best = -5.0 / 1024.0 * best.log2_fpr;
    const double eff_est = -5.0 / 1024.0 * at_est.log2();
    const double drop = (eff_best - eff_est) / eff_best * 100.0;
    t.expect(best.k == e.k, std::string(name(e.variant)) + " k*=" + std::to_string(best.k));
    t.expect(within(penalty, e.penalty, 0.1), std::string(name(e.variant)) + " penalty " + fixed(penalty, 3) + "%");
    t.expect(within(drop, e.eff_drop, 0.1), std::string(name(e.variant)) + " efficiency drop " + fixed(drop, 3) + "%");
    d << ", " << name(e.variant) << ": k*=" << best.k << " f*=" << best.fpr.to_decimal(4)
      << " penalty +" << fixed(penalty, 2) << "% efficiency -" << fixed(drop, 3) << "%";
  }
  d << "; " << t.summary();
  return {3, "optimal k at m=1024, n=5", t.ok(), d.str(), 0};
}

// --- 4: maximum efficiency at m = 100 ---------------------------------------

CriterionResult max_efficiency_100(const VerifyOptions&) {
  Tally t;
  const unsigned m = 100;
  const EfficiencyPoint s = max_efficiency(FilterVariant::Standard, m);
  const double closed = 1.0 / (m * std::log2(m / (m - 1.0)));
  t.expect(s.n == 69 && s.k == 1, "standard max at (" + std::to_string(s.n) + "," + std::to_string(s.k) + ")");
  t.expect(s.epsilon == closed, "standard epsilon differs from closed form");
  const double exact_s = efficiency(FilterVariant::Standard, m, 69, 1);
  t.expect(fixed(exact_s, 2) == "0.69" && fixed(closed, 2) == "0.69", "standard epsilon " + fixed(exact_s, 4));
  // The search agrees: k = 1 peaks at n = 69 and beats every larger k.
  const EfficiencyPoint peak1 = peak_efficiency(FilterVariant::Standard, m, 1);
  t.expect(peak1.n == 69, "standard k=1 peak at n=" + std::to_string(peak1.n));
  for (unsigned k = 2; k <= 10; ++k) {
    const EfficiencyPoint p = peak_efficiency(FilterVariant::Standard, m, k);
    t.expect(p.epsilon < peak1.epsilon, "standard k=" + std::to_string(k) + " peak exceeds k=1");
  }

  const EfficiencyPoint c = max_efficiency(FilterVariant::Classic, m);
  const double closed_c = log2(binomial(100L, 50)) / 100.0;
  const double exact_c = efficiency(FilterVariant::Classic, m, 1, 50);
  t.expect(c.n == 1 && c.k == 50, "classic max at (" + std::to_string(c.n) + "," + std::to_string(c.k) + ")");
  t.expect(within(c.epsilon, closed_c, 1e-12) && within(exact_c, closed_c, 1e-12),
           "classic epsilon " + fixed(exact_c, 6) + " vs " + fixed(closed_c, 6));
  t.expect(fixed(exact_c, 2) == "0.96", "classic epsilon " + fixed(exact_c, 4));
  double best_peak = 0;
  unsigned best_k = 0;
  for (unsigned k = 1; k <= m / 2; ++k) {
    const EfficiencyPoint p = peak_efficiency(FilterVariant::Classic, m, k);
    if (p.epsilon > best_peak) {
      best_peak = p.epsilon;
      best_k = k;
    }
  }
  t.expect(best_k == 50, "classic peak over k at k=" + std::to_string(best_k));
  std::ostringstream d;
  d << "standard (n=" << s.n << ",k=" << s.k << ") eps=" << fixed(exact_s, 4) << " closed form "
    << fixed(closed, 4) << "; classic (n=" << c.n << ",k=" << c.k << ") eps=" << fixed(exact_c, 4)
    << "; " << t.summary();
  return {4, "maximum efficiency at m=100", t.ok(), d.str(), 0};
}

// --- 5: brute-force equivalence ---------------------------------------------

CriterionResult oracle_small(const VerifyOptions&) {
  Tally t;
  for (unsigned m = 1; m <= 5; ++m) {
    for (unsigned n = 0; n <= 3; ++n) {
      for (unsigned k = 1; k <= 3; ++k) {
        const std::string at = "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
        const auto balls = oracle::single_balls(m, n * k);
        t.expect(fpr_standard_exact(m, n, k) == oracle::standard_probe_rate(balls, k), "f_S" + at);
        const auto pmf_s = oracle::occupancy_pmf(balls);
        for (unsigned i = 0; i <= m; ++i) {
          t.expect(classic_pmf(m, n * k, i) == pmf_s[i], "classic pmf" + at);
        }
        if (k > m) continue;
        const auto batch = oracle::batches(m, n, k);
        t.expect(fpr_classic_exact(m, n, k) == oracle::classic_probe_rate(batch, k), "f_C" + at);
        const auto pmf_c = oracle::occupancy_pmf(batch);
        for (unsigned i = 0; i <= m; ++i) {
          t.expect(committee_pmf(m, n, k, i) == pmf_c[i], "committee pmf" + at);
        }
      }
    }
  }
  return {5, "brute-force oracle equivalence", t.ok(), t.summary(), 0};
}

// --- 6: invariant suites ----------------------------------------------------

Rational rand_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 9);
  return Rational(BigInt(num(rng)), BigInt(den(rng)));
}

std::vector<Department> random_departments(std::mt19937_64& rng, unsigned m, unsigned max_balls,
                                           bool single) {
  std::uniform_int_distribution<unsigned> count(1, 3);
  std::vector<Department> out;
  unsigned balls = 0;
  const unsigned parts = count(rng);
  for (unsigned d = 0; d < parts; ++d) {
    std::uniform_int_distribution<unsigned> kd(1, m);
    const unsigned k = kd(rng);
    std::uniform_int_distribution<unsigned> nd(1, single ? 1 : 3);
    const unsigned n = nd(rng);
    if (balls + n * k > max_balls && !out.empty()) break;
    if (balls + n * k > max_balls) {
      out.push_back({1, std::min(k, max_balls)});
      break;
    }
    out.push_back({n, k});
    balls += n * k;
  }
  return out;
}

CriterionResult invariants(const VerifyOptions& options) {
  Tally t;
  std::mt19937_64 rng(options.seed);
  std::ostringstream d;
  auto section = [&](const char* label, const std::function<void()>& body) {
    const unsigned before = t.checks();
    body();
    d << label << " " << t.checks() - before << ", ";
  };

  section("normalization", [&] {
    for (unsigned m = 1; m <= 12; ++m) {
      for (unsigned n = 0; n <= 12; ++n) {
        Rational sum = 0;
        for (unsigned i = 0; i <= m; ++i) sum += classic_pmf(m, n, i);
        t.expect(sum == Rational(1), "classic pmf sum");
      }
      for (unsigned k = 1; k <= m; ++k) {
        for (unsigned n = 0; n * k <= 12; ++n) {
          Rational sum = 0;
          for (unsigned i = 0; i <= m; ++i) sum += committee_pmf(m, n, k, i);
          t.expect(sum == Rational(1), "committee pmf sum");
        }
      }
      for (int rep = 0; rep < 6; ++rep) {
        const CommitteeSpec spec(m, random_departments(rng, m, 12, false));
        Rational su = 0;
        Rational si = 0;
        for (unsigned i = 0; i <= m; ++i) {
          su += union_pmf(spec, i);
          si += intersection_pmf(spec, i);
        }
        t.expect(su == Rational(1), "union pmf sum");
        t.expect(si == Rational(1), "intersection pmf sum");
      }
    }
  });

  section("prince", [&] {
    for (unsigned m = 1; m <= 10; ++m) {
      for (unsigned n = 0; n <= 10; ++n) {
        for (unsigned i = 0; i < m; ++i) {
          const Rational lhs = classic_pmf(m, n + 1, i + 1);
          const Rational rhs = Rational(BigInt(m - i), BigInt(m)) * classic_pmf(m, n, i) +
                               Rational(BigInt(i + 1), BigInt(m)) * classic_pmf(m, n, i + 1);
          t.expect(lhs == rhs, "Prince recurrence");
        }
      }
    }
  });

  section("moment-recurrence", [&] {
    for (unsigned m = 2; m <= 8; ++m) {
      for (unsigned n = 0; n <= 8; ++n) {
        for (unsigned r = 0; r <= 8; ++r) {
          const Rational lhs = classic_raw_moment(m, n, r);
          const Rational rhs =
              Rational(BigInt(1), BigInt(m)) * classic_raw_moment(m, n, r + 1) +
              Rational(BigInt(m - 1), BigInt(m)).pow(n) * classic_raw_moment(m - 1, n, r);
          t.expect(lhs == rhs, "moment recurrence at m=" + std::to_string(m));
        }
      }
    }
  });

  section("stirling-identity", [&] {
    for (int rep = 0; rep < 120; ++rep) {
      std::uniform_int_distribution<unsigned> small(1, 8);
      const unsigned n = small(rng);
      const unsigned r = small(rng) - 1;
      const Rational z = rand_rational(rng);
      Rational lhs = 0;
      for (unsigned i = 1; i <= n; ++i) {
        lhs += Rational(stirling2(n, i)) * Rational(BigInt(i)).pow(r) * falling_factorial(z, i);
      }
      Rational rhs = 0;
      for (unsigned j = 0; j <= r; ++j) {
        rhs += Rational(stirling2(r, j)) * nabla_power(z, n, j) * falling_factorial(z, j);
      }
      t.expect(lhs == rhs, "Stirling identity at z=" + z.str());
    }
  });

  section("complement-duality", [&] {
    for (int rep = 0; rep < 150; ++rep) {
      std::uniform_int_distribution<unsigned> mm(2, 12);
      const unsigned m = mm(rng);
      std::uniform_int_distribution<unsigned> kk(1, m - 1);
      std::uniform_int_distribution<unsigned> cc(1, 4);
      std::vector<Department> deps;
      std::vector<Department> flipped;
      const unsigned c = cc(rng);
      for (unsigned d = 0; d < c; ++d) {
        const unsigned k = kk(rng);
        deps.push_back({1, k});
        flipped.push_back({1, m - k});
      }
      const CommitteeSpec a(m, deps);
      const CommitteeSpec b(m, flipped);
      for (unsigned i = 0; i <= m; ++i) {
        t.expect(intersection_pmf(a, i) == union_pmf(b, m - i), "complement duality");
      }
    }
  });

  section("moment-sandwich", [&] {
    for (unsigned m = 2; m <= 20; ++m) {
      for (int rep = 0; rep < 12; ++rep) {
        std::uniform_int_distribution<unsigned> kk(1, m - 1);
        const unsigned k = kk(rng);
        std::uniform_int_distribution<unsigned> nn(1, 6);
        const unsigned n = nn(rng);
        const unsigned rmax = std::min(k, m - k);
        std::uniform_int_distribution<unsigned> rr(0, rmax);
        const unsigned r = rr(rng);
        const MomentBounds b = moment_bounds(m, n, k, r);
        const Rational normalized = committee_moment(m, n, k, r, MomentKind::Binomial) /
                                    Rational(binomial(static_cast<long>(m), r));
        t.expect(b.lower <= b.jensen && b.jensen <= normalized && normalized <= b.upper,
                 "moment sandwich at (" + std::to_string(m) + "," + std::to_string(n) + "," +
                     std::to_string(k) + "," + std::to_string(r) + ")");
      }
    }
  });

  section("bound-ordering", [&] {
    for (unsigned m = 3; m <= 64; ++m) {
      for (unsigned n = 1; n <= 16; ++n) {
        for (unsigned k = 1; 2 * k + 1 <= m; ++k) {
          const Rational fs = fpr_standard_exact(m, n, k);
          const Rational fc = fpr_classic_exact(m, n, k);
          const FprBounds b = fpr_bounds(m, n, k);
          const Rational mid = fpr_middle_exact(m, n, k);
          const std::string at = "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
          t.expect(b.E <= mid.to_double() * (1 + 1e-12), "E <= M at " + at);
          t.expect(mid <= fs, "M <= f_S at " + at);
          t.expect(fs <= b.U, "f_S <= U at " + at);
          t.expect(b.L <= fs, "L <= f_S at " + at);
          t.expect(b.L <= fc && fc <= b.U, "L <= f_C <= U at " + at);
        }
      }
    }
  });

  section("holder", [&] {
    for (int rep = 0; rep < 80; ++rep) {
      std::uniform_int_distribution<unsigned> mm(2, 200);
      std::uniform_int_distribution<unsigned> kk(1, 6);
      std::uniform_int_distribution<unsigned> tt(1, 3);
      const unsigned m = mm(rng);
      const unsigned k = kk(rng);
      const unsigned n = k * (k + 1) * tt(rng);
      // f_S(m, n/(k+1), k+1)^{1/(k+1)} >= f_S(m, n/k, k)^{1/k}, compared
      // exactly after raising both sides to the power k(k+1).
      const Rational more = fpr_standard_exact(m, n / (k + 1), k + 1);
      const Rational fewer = fpr_standard_exact(m, n / k, k);
      t.expect(more.pow(k) >= fewer.pow(k + 1),
               "Holder at (" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")");
    }
  });

  std::string detail = d.str();
  detail += t.summary();
  return {6, "invariant suites", t.ok(), detail, 0};
}

// --- 7: Monte Carlo agreement -----------------------------------------------

CriterionResult montecarlo(const VerifyOptions& options) {
  const auto configs = validation_configs(options.mc_trials, options.mc_probes, options.seed);
  const ValidationReport report = run_validation(configs);
  if (!options.artifact_dir.empty()) {
    std::ofstream out(artifact_path(options, "montecarlo_validation.csv"));
    write_csv_header(out);
    for (const auto& row : report.rows) write_csv_row(out, row);
  }
  double worst_z = 0;
  double worst_p = 1;
  for (const auto& row : report.rows) {
    worst_z = std::max({worst_z, std::abs(row.fpr_z), std::abs(row.mean_z)});
    worst_p = std::min(worst_p, row.occupancy.p_value);
  }
  std::ostringstream d;
  d << report.rows.size() << " configs x " << options.mc_trials << " trials; max |z|="
    << fixed(worst_z, 2) << ", beyond 4 SE: " << report.beyond_4se << ", beyond 6 SE: "
    << report.beyond_6se << ", min chi-square p=" << worst_p;
  return {7, "Monte Carlo agreement", report.passed(), d.str(), 0};
}

// --- 8: asymptotic efficiency -----------------------------------------------

CriterionResult asymptotics(const VerifyOptions&) {
  Tally t;
  std::ostringstream d;
  const double ln2 = std::log(2.0);
  double prev_s = 0;
  double prev_c = 0;
  for (unsigned m : {100U, 1000U, 10000U}) {
    const EfficiencyPoint s = max_efficiency(FilterVariant::Standard, m);
    const EfficiencyPoint c = max_efficiency(FilterVariant::Classic, m);
    // Cross-check both against the exact FPR at the reported (n, k).
    const double exact_s = efficiency(FilterVariant::Standard, m, s.n, s.k);
    const double exact_c = efficiency(FilterVariant::Classic, m, c.n, c.k);
    t.expect(within(exact_s, s.epsilon, 1e-3), "standard exact/closed mismatch at m=" + std::to_string(m));
    t.expect(within(exact_c, c.epsilon, 1e-9), "classic exact/closed mismatch at m=" + std::to_string(m));
    t.expect(s.epsilon > prev_s && s.epsilon < ln2, "standard not increasing below ln 2 at m=" + std::to_string(m));
    t.expect(c.epsilon > prev_c && c.epsilon < 1.0, "classic not increasing below 1 at m=" + std::to_string(m));
    prev_s = s.epsilon;
    prev_c = c.epsilon;
    d << "m=" << m << ": standard " << fixed(s.epsilon, 5) << ", classic " << fixed(c.epsilon, 5) << "; ";
  }
  t.expect(ln2 - prev_s <= 0.01, "standard gap to ln 2 at m=10^4");
  t.expect(1.0 - prev_c <= 0.01, "classic gap to 1 at m=10^4");
  d << t.summary();
  return {8, "asymptotic efficiency", t.ok(), d.str(), 0};
}

// --- 9: valley crossings ----------------------------------------------------

CriterionResult valley(const VerifyOptions&) {
  Tally t;
  double worst = 0;
  for (unsigned k = 1; k <= 10; ++k) {
    const long double x = valley_crossing(k);
    const long double lhs = std::pow(1.0L - std::exp(-static_cast<long double>(k) * x), k);
    const long double rhs = std::pow(1.0L - std::exp(-static_cast<long double>(k + 1) * x), k + 1);
    const double residual = static_cast<double>(std::fabs(lhs - rhs));
    worst = std::max(worst, residual);
    t.expect(x > 0 && residual < 1e-10, "residual at k=" + std::to_string(k));
  }
  const double golden = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  const double x1 = valley_crossing(1);
  t.expect(within(x1, golden, 1e-9), "k=1 root " + fixed(x1, 12));
  std::ostringstream d;
  d << "max residual " << worst << ", x(1)=" << fixed(x1, 12) << " (ln phi " << fixed(golden, 12)
    << "); " << t.summary();
  return {9, "valley crossings", t.ok(), d.str(), 0};
}

// --- 10: conjecture scan ----------------------------------------------------

CriterionResult conjectures(const VerifyOptions& options) {
  ScanOptions scan;
  scan.m_max = 256;
  scan.n_max = 32;
  scan.peak_m_max = 64;
  const ConjectureReport report = conjecture_scan(scan);
  if (!options.artifact_dir.empty()) {
    std::ofstream out(artifact_path(options, "conjecture_scan.csv"));
    write_scan_csv(out, report);
  }
  std::ostringstream d;
  d << report.ordering.size() << " (m,n) rows; ordering violations " << report.ordering_violations
    << " (literal real bounds: " << report.literal_violations << "), k*=1 branch violations "
    << report.small_ratio_violations << ", classic peak monotonicity (m<=" << scan.peak_m_max
    << ", informational) violations " << report.peak_violations;
  unsigned shown = 0;
  for (const auto& r : report.ordering) {
    if (r.passed || shown >= 5) continue;
    ++shown;
    d << "; (" << r.m << "," << r.n << "): k*_C=" << r.classic_k;
    if (r.classic_k_last != r.classic_k) d << ".." << r.classic_k_last;
    d << " k*_S=" << r.standard_k;
    if (r.standard_k_last != r.standard_k) d << ".." << r.standard_k_last;
    d << (r.lower ? "" : " [lower]") << (r.middle ? "" : " [middle]") << (r.upper ? "" : " [upper]");
  }
  const bool ok = report.ordering_violations == 0 && report.small_ratio_violations == 0;
  return {10, "optimal-k ordering scan", ok, d.str(), 0};
}

using CriterionFn = CriterionResult (*)(const VerifyOptions&);

constexpr CriterionFn kCriteria[kCriterionCount] = {
    optimum_64_4, optimum_1000_20, optimum_1024_5, max_efficiency_100, oracle_small,
    invariants, montecarlo,    asymptotics,  valley,             conjectures};

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  if (id < 1 || id > kCriterionCount) throw DomainError("unknown criterion " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = kCriteria[id - 1](options);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"reference-values", "oracle-small", "invariants",
                                                 "montecarlo",    "asymptotics",  "valley",
                                                 "conjectures",   "all"};
  return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> table = {
      {"reference-values", {1, 2, 3, 4}}, {"oracle-small", {5}}, {"invariants", {6}},
      {"montecarlo", {7}},             {"asymptotics", {8}},  {"valley", {9}},
      {"conjectures", {10}},           {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}};
  auto it = table.find(suite);
  if (it == table.end()) throw DomainError("unknown verification suite '" + suite + "'");
  return it->second;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof(head), "[%s] %2d %-32s %8.2fs  ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace occbloom
