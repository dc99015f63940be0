#include "occbloom/analytics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "occbloom/errors.hpp"
#include "occbloom/oracle.hpp"

using occbloom::BigInt;
using occbloom::FilterVariant;
using occbloom::Rational;

namespace {

Rational q(long num, long den = 1) { return Rational(BigInt(num), BigInt(den)); }

constexpr FilterVariant kBoth[] = {FilterVariant::Classic, FilterVariant::Standard};

// Minimizers by scanning every k, for cross-checking the optimizer.
std::pair<unsigned, unsigned> scan_optimal(FilterVariant v, unsigned m, unsigned n) {
  const unsigned top = v == FilterVariant::Classic ? m : 4 * m;
  Rational best = 2;
  unsigned first = 0, last = 0;
  for (unsigned k = 1; k <= top; ++k) {
    const Rational f = occbloom::fpr_exact(v, m, n, k);
    if (f < best) {
      best = f;
      first = last = k;
    } else if (f == best) {
      last = k;
    }
  }
  return {first, last};
}

}  // namespace

TEST(ExactFpr, StandardExamples) {
  EXPECT_EQ(occbloom::fpr_standard_exact(2, 1, 2), q(5, 8));
  EXPECT_EQ(occbloom::fpr_standard_exact(17, 0, 4), q(0));
  EXPECT_EQ(occbloom::fpr_standard_exact(1, 1, 1), q(1));
  EXPECT_EQ(occbloom::fpr_standard_exact(5, 2, 3), q(874965, 1953125));
}

TEST(ExactFpr, ClassicExamples) {
  EXPECT_EQ(occbloom::fpr_classic_exact(5, 2, 3), q(11, 20));
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned k = 1; k <= m; ++k) {
      EXPECT_EQ(occbloom::fpr_classic_exact(m, 1, k),
                Rational(BigInt(1), occbloom::binomial(static_cast<long>(m), k)));
      for (unsigned n = 1; n <= 3; ++n) {
        const Rational via_moment =
            occbloom::committee_moment(m, n, k, k, occbloom::MomentKind::Binomial) /
            Rational(occbloom::binomial(static_cast<long>(m), k));
        EXPECT_EQ(occbloom::fpr_classic_exact(m, n, k), via_moment);
      }
    }
    EXPECT_EQ(occbloom::fpr_classic_exact(m, 3, m), q(1));
  }
  EXPECT_THROW(occbloom::fpr_classic_exact(4, 1, 5), occbloom::DomainError);
}

TEST(ExactFpr, MatchesEnumeration) {
  for (unsigned m = 1; m <= 5; ++m) {
    for (unsigned n = 0; n <= 3; ++n) {
      for (unsigned k = 1; k <= 3; ++k) {
        EXPECT_EQ(occbloom::fpr_standard_exact(m, n, k), occbloom::oracle::standard_fpr(m, n, k));
        if (k <= m) EXPECT_EQ(occbloom::fpr_classic_exact(m, n, k), occbloom::oracle::classic_fpr(m, n, k));
      }
    }
  }
}

TEST(RecursiveFpr, Examples) {
  EXPECT_NEAR(occbloom::fpr_recursive(FilterVariant::Standard, 2, 1, 2), 0.625, 1e-9);
  EXPECT_NEAR(occbloom::fpr_recursive(FilterVariant::Classic, 5, 2, 3), 0.55, 1e-9);
  EXPECT_EQ(occbloom::fpr_recursive(FilterVariant::Classic, 9, 0, 3), 0.0);
  EXPECT_EQ(occbloom::fpr_recursive(FilterVariant::Standard, 9, 0, 3), 0.0);
}

TEST(RecursiveFpr, SixSignificantDigits) {
  for (unsigned m = 3; m <= 64; ++m) {
    for (unsigned n = 1; n <= 16; ++n) {
      for (unsigned k = 1; 2 * k + 1 <= m; ++k) {
        for (auto v : kBoth) {
          const Rational exact = occbloom::fpr_exact(v, m, n, k);
          const double e = exact.to_double();
          if (e < 1e-12) continue;
          const double r = occbloom::fpr_recursive(v, m, n, k);
          ASSERT_LE(std::abs(r - e), 5e-7 * e) << to_string(v) << " " << m << "," << n << "," << k;
        }
      }
    }
  }
}

TEST(Bounds, Examples) {
  const auto b = occbloom::fpr_bounds(5, 2, 3);
  EXPECT_EQ(b.L, q(5460, 15625));
  EXPECT_EQ(b.U, q(9261, 15625));
  EXPECT_FALSE(b.ordered);  // 2k+1 = 7 > 5
  EXPECT_LE(b.L, q(11, 20));
  EXPECT_LE(q(11, 20), b.U);
  EXPECT_LE(b.L, q(874965, 1953125));
  EXPECT_LE(q(874965, 1953125), b.U);

  const auto z = occbloom::fpr_bounds(40, 0, 3);
  EXPECT_EQ(z.E, 0.0);
  EXPECT_EQ(z.M, 0.0);
  EXPECT_EQ(z.L, q(0));
  EXPECT_EQ(z.U, q(0));

  const auto big = occbloom::fpr_bounds(1000, 20, 30);
  const double fs = occbloom::fpr_standard_exact(1000, 20, 30).to_double();
  EXPECT_TRUE(big.ordered);
  EXPECT_LE(big.E, big.M);
  EXPECT_LE(big.M, fs);
  EXPECT_LE(fs, big.U.to_double());
}

TEST(Bounds, OrderingSweep) {
  for (unsigned m = 3; m <= 64; m += 3) {
    for (unsigned n = 1; n <= 16; ++n) {
      for (unsigned k = 1; 2 * k + 1 <= m; ++k) {
        const auto b = occbloom::fpr_bounds(m, n, k);
        const Rational fs = occbloom::fpr_standard_exact(m, n, k);
        const Rational fc = occbloom::fpr_classic_exact(m, n, k);
        const Rational mid = occbloom::fpr_middle_exact(m, n, k);
        EXPECT_LE(b.E, mid.to_double() * (1 + 1e-12));
        EXPECT_LE(mid, fs);
        EXPECT_LE(fs, b.U);
        EXPECT_LE(b.L, fs);
        EXPECT_LE(b.L, fc);
        EXPECT_LE(fc, b.U);
      }
    }
  }
}

TEST(Taylor, Examples) {
  EXPECT_NEAR(occbloom::fpr_taylor(2, 1, 2), 0.625, 1e-12);
  for (unsigned m : {5U, 33U, 100U}) {
    for (unsigned n : {1U, 4U, 9U}) {
      const double mu = occbloom::classic_mean_variance(m, n).mean.to_double();
      EXPECT_NEAR(occbloom::fpr_taylor(m, n, 1), mu / m, 1e-14);
    }
  }
  const double exact = occbloom::fpr_standard_exact(100, 20, 5).to_double();
  EXPECT_NEAR(occbloom::fpr_taylor(100, 20, 5), exact, 0.02 * exact);
}

TEST(OptimalK, KnownValues) {
  const auto s = occbloom::optimal_k_exact(FilterVariant::Standard, 64, 4);
  const auto c = occbloom::optimal_k_exact(FilterVariant::Classic, 64, 4);
  EXPECT_EQ(s.k, 10U);
  EXPECT_EQ(s.fpr.to_decimal(3), "6.15e-04");
  EXPECT_EQ(c.k, 9U);
  EXPECT_EQ(c.fpr.to_decimal(3), "4.55e-04");
  EXPECT_NEAR(occbloom::optimal_k_estimate(64, 4), 11.09, 0.005);
}

TEST(OptimalK, MatchesFullScan) {
  for (unsigned m = 1; m <= 40; ++m) {
    for (unsigned n = 1; n <= 8; ++n) {
      for (auto v : kBoth) {
        const auto best = occbloom::optimal_k_exact(v, m, n);
        const auto [first, last] = scan_optimal(v, m, n);
        EXPECT_EQ(best.k, first) << to_string(v) << " m=" << m << " n=" << n;
        // With m = 1 every k ties at f = 1, so the scan's last minimizer is arbitrary.
        if (m > 1) EXPECT_EQ(best.k_last, last) << to_string(v) << " m=" << m << " n=" << n;
        EXPECT_EQ(best.fpr, occbloom::fpr_exact(v, m, n, first));
      }
    }
  }
}

TEST(OptimalK, ShapeSingleDip) {
  // f(k) for m=100, n=20 falls to one minimum and then rises toward 1.
  for (auto v : kBoth) {
    const auto best = occbloom::optimal_k_exact(v, 100, 20);
    Rational previous = 2;
    for (unsigned k = 1; k <= 40; ++k) {
      const Rational f = occbloom::fpr_exact(v, 100, 20, k);
      if (k <= best.k) {
        EXPECT_LT(f, previous);
      } else {
        EXPECT_GT(f, previous);
      }
      previous = f;
    }
    EXPECT_GT(occbloom::fpr_exact(v, 100, 20, 40), best.fpr);
  }
}

TEST(Capacity, BracketsTarget) {
  const double p = std::ldexp(1.0, -10);
  for (auto v : kBoth) {
    const unsigned n = occbloom::capacity_n_max(v, 1024, p);
    EXPECT_LE(occbloom::optimal_k_exact(v, 1024, n).fpr.to_double(), p);
    EXPECT_GT(occbloom::optimal_k_exact(v, 1024, n + 1).fpr.to_double(), p);
    EXPECT_NEAR(n, occbloom::capacity_n_estimate(1024, p), 3.0);
  }
  EXPECT_NEAR(occbloom::capacity_n_estimate(1024, p), 1024 * std::log(2.0) / 10, 1e-9);
  EXPECT_THROW(occbloom::capacity_n_max(FilterVariant::Standard, 1024, 1.0), occbloom::DomainError);
  EXPECT_THROW(occbloom::capacity_n_max(FilterVariant::Standard, 4, 1e-6), occbloom::InfeasibleError);
}

TEST(Capacity, SmallestSize) {
  for (auto v : kBoth) {
    const unsigned m = occbloom::size_m_min(v, 100, 0.01);
    EXPECT_LE(occbloom::optimal_k_exact(v, m, 100).fpr.to_double(), 0.01);
    EXPECT_GT(occbloom::optimal_k_exact(v, m - 1, 100).fpr.to_double(), 0.01);
  }
  EXPECT_EQ(occbloom::size_m_min(FilterVariant::Standard, 100, 0.01), 962U);
  EXPECT_THROW(occbloom::size_m_min(FilterVariant::Standard, 100, 0.0), occbloom::DomainError);
}

TEST(Efficiency, Examples) {
  EXPECT_NEAR(occbloom::efficiency(FilterVariant::Standard, 100, 69, 1), 0.6897, 5e-5);
  const double classic = std::log2(occbloom::binomial(100L, 50).get_d()) / 100.0;
  EXPECT_NEAR(occbloom::efficiency(FilterVariant::Classic, 100, 1, 50), classic, 1e-12);
  EXPECT_NEAR(classic, 0.9635, 5e-5);
  EXPECT_EQ(occbloom::efficiency(FilterVariant::Classic, 6, 2, 6), 0.0);
  EXPECT_THROW(occbloom::efficiency(FilterVariant::Standard, 6, 0, 2), occbloom::UndefinedEfficiency);
}

TEST(Efficiency, WithinWalkerCeiling) {
  for (unsigned m = 2; m <= 40; ++m) {
    for (unsigned n = 1; n <= 12; ++n) {
      for (unsigned k = 1; k <= m; ++k) {
        for (auto v : kBoth) {
          const double e = occbloom::efficiency(v, m, n, k);
          EXPECT_GE(e, 0.0);
          EXPECT_LE(e, 1.0);
        }
      }
    }
  }
}

TEST(Efficiency, HolderMonotonicity) {
  for (unsigned m = 2; m <= 200; m += 9) {
    for (unsigned k = 1; k <= 6; ++k) {
      const unsigned n = k * (k + 1);
      const Rational more = occbloom::fpr_standard_exact(m, n / (k + 1), k + 1);
      const Rational fewer = occbloom::fpr_standard_exact(m, n / k, k);
      EXPECT_GE(more.pow(k), fewer.pow(k + 1)) << m << "," << k;
    }
  }
}

TEST(Efficiency, MaximaAtHundredBits) {
  const auto s = occbloom::max_efficiency(FilterVariant::Standard, 100);
  EXPECT_EQ(s.n, 69U);
  EXPECT_EQ(s.k, 1U);
  EXPECT_NEAR(s.epsilon, 1.0 / (100 * std::log2(100.0 / 99.0)), 1e-15);
  EXPECT_FALSE(s.conjectured);
  const auto c = occbloom::max_efficiency(FilterVariant::Classic, 100);
  EXPECT_EQ(c.n, 1U);
  EXPECT_EQ(c.k, 50U);
  EXPECT_TRUE(c.conjectured);
  EXPECT_EQ(occbloom::peak_efficiency(FilterVariant::Standard, 100, 1).n, 69U);
  EXPECT_THROW(occbloom::max_efficiency(FilterVariant::Standard, 1), occbloom::DomainError);
}

TEST(Efficiency, PeakMatchesExhaustiveScan) {
  for (unsigned m : {9U, 20U, 50U}) {
    for (unsigned k = 1; k <= 6; ++k) {
      for (auto v : kBoth) {
        const auto peak = occbloom::peak_efficiency(v, m, k);
        double best = -1;
        unsigned at = 0;
        for (unsigned n = 1; n <= 4 * m; ++n) {
          const double e = occbloom::efficiency(v, m, n, k);
          if (e > best) {
            best = e;
            at = n;
          }
        }
        EXPECT_EQ(peak.n, at) << to_string(v) << " m=" << m << " k=" << k;
        EXPECT_DOUBLE_EQ(peak.epsilon, best);
      }
    }
  }
}

TEST(Efficiency, AsymptoticLimits) {
  double s_prev = 0, c_prev = 0;
  for (unsigned m : {1000U, 10000U, 100000U}) {
    const double s = occbloom::max_efficiency(FilterVariant::Standard, m).epsilon;
    const double c = occbloom::max_efficiency(FilterVariant::Classic, m).epsilon;
    EXPECT_GT(s, s_prev);
    EXPECT_GT(c, c_prev);
    EXPECT_LT(s, std::log(2.0));
    EXPECT_LT(c, 1.0);
    s_prev = s;
    c_prev = c;
  }
  EXPECT_NEAR(s_prev, std::log(2.0), 1e-5);
  EXPECT_NEAR(c_prev, 1.0, 1e-3);
}

TEST(Valley, GoldenRatioAndResiduals) {
  EXPECT_NEAR(occbloom::valley_crossing(1), std::log((1 + std::sqrt(5.0)) / 2), 1e-12);
  for (unsigned k = 1; k <= 20; ++k) {
    const double x = occbloom::valley_crossing(k);
    EXPECT_GT(x, 0.0);
    const double lhs = std::pow(1 - std::exp(-double(k) * x), k);
    const double rhs = std::pow(1 - std::exp(-double(k + 1) * x), k + 1);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10);
  }
  EXPECT_THROW(occbloom::valley_crossing(0), occbloom::DomainError);
}

TEST(IntersectionFilter, Moments) {
  auto mv = occbloom::intersection_filter_moments(2, 1, {1, 1});
  EXPECT_EQ(mv.mean, q(1, 2));
  EXPECT_EQ(mv.variance, q(1, 4));
  for (unsigned n = 0; n <= 5; ++n) {
    mv = occbloom::intersection_filter_moments(11, 3, {n});
    EXPECT_EQ(mv.mean, occbloom::classic_mean_variance(11, 3 * n).mean);
    EXPECT_EQ(mv.variance, occbloom::classic_mean_variance(11, 3 * n).variance);
  }
  mv = occbloom::intersection_filter_moments(11, 3, {4, 0, 2});
  EXPECT_EQ(mv.mean, q(0));
}

TEST(Analyze, ReportFields) {
  const auto r = occbloom::analyze(FilterVariant::Classic, 5, 2, 3);
  EXPECT_EQ(r.exact, q(11, 20));
  EXPECT_NEAR(r.log2_exact, std::log2(0.55), 1e-12);
  EXPECT_TRUE(r.has_efficiency);
  EXPECT_NEAR(r.efficiency, -0.4 * std::log2(0.55), 1e-12);
  const auto z = occbloom::analyze(FilterVariant::Standard, 5, 0, 3);
  EXPECT_FALSE(z.has_efficiency);
}
