#include "occbloom/occupancy.hpp"

#include <gtest/gtest.h>

#include <random>

#include "occbloom/errors.hpp"
#include "occbloom/oracle.hpp"

using occbloom::BigInt;
using occbloom::CommitteeSpec;
using occbloom::Department;
using occbloom::MomentKind;
using occbloom::Rational;

namespace {

Rational q(long num, long den = 1) { return Rational(BigInt(num), BigInt(den)); }

}  // namespace

TEST(ClassicOccupancy, Pmf) {
  EXPECT_EQ(occbloom::classic_pmf(5, 1, 1), q(1));
  EXPECT_EQ(occbloom::classic_pmf(2, 2, 1), q(1, 2));
  EXPECT_EQ(occbloom::classic_pmf(2, 2, 2), q(1, 2));
  EXPECT_EQ(occbloom::classic_pmf(4, 0, 0), q(1));
  EXPECT_EQ(occbloom::classic_pmf(4, 3, 0), q(0));
  EXPECT_EQ(occbloom::classic_pmf(4, 2, 3), q(0));
}

TEST(ClassicOccupancy, MomentsAndMeanVariance) {
  EXPECT_EQ(occbloom::classic_raw_moment(7, 3, 0), q(1));
  EXPECT_EQ(occbloom::classic_raw_moment(2, 2, 1), q(3, 2));
  EXPECT_EQ(occbloom::classic_raw_moment(2, 2, 2), q(5, 2));
  auto mv = occbloom::classic_mean_variance(2, 2);
  EXPECT_EQ(mv.mean, q(3, 2));
  EXPECT_EQ(mv.variance, q(1, 4));
  mv = occbloom::classic_mean_variance(9, 0);
  EXPECT_EQ(mv.mean, q(0));
  EXPECT_EQ(mv.variance, q(0));
  mv = occbloom::classic_mean_variance(9, 1);
  EXPECT_EQ(mv.mean, q(1));
  EXPECT_EQ(mv.variance, q(0));
}

TEST(ClassicOccupancy, MeanVarianceMatchesMoments) {
  for (unsigned m = 1; m <= 15; ++m) {
    for (unsigned n = 0; n <= 15; ++n) {
      const auto mv = occbloom::classic_mean_variance(m, n);
      const Rational e1 = occbloom::classic_raw_moment(m, n, 1);
      const Rational e2 = occbloom::classic_raw_moment(m, n, 2);
      EXPECT_EQ(mv.mean, e1);
      EXPECT_EQ(mv.variance, e2 - e1 * e1);
    }
  }
}

TEST(CommitteeOccupancy, Pmf) {
  EXPECT_EQ(occbloom::committee_pmf(5, 2, 3, 4), q(3, 5));
  EXPECT_EQ(occbloom::committee_pmf(5, 2, 3, 3), q(1, 10));
  EXPECT_EQ(occbloom::committee_pmf(5, 2, 3, 5), q(3, 10));
  for (unsigned m = 1; m <= 9; ++m) {
    for (unsigned k = 1; k <= m; ++k) EXPECT_EQ(occbloom::committee_pmf(m, 1, k, k), q(1));
  }
}

TEST(CommitteeOccupancy, Moments) {
  EXPECT_EQ(occbloom::committee_moment(5, 2, 3, 1, MomentKind::Raw), q(21, 5));
  EXPECT_EQ(occbloom::committee_moment(5, 2, 3, 5, MomentKind::Binomial), q(3, 10));
  for (auto kind : {MomentKind::Raw, MomentKind::Factorial, MomentKind::Binomial}) {
    EXPECT_EQ(occbloom::committee_moment(6, 3, 2, 0, kind), q(1));
  }
  const auto mv = occbloom::committee_mean_variance(5, 2, 3);
  EXPECT_EQ(mv.mean, q(21, 5));
  EXPECT_EQ(mv.variance, q(9, 25));
  EXPECT_EQ(occbloom::committee_mean_variance(7, 1, 3).variance, q(0));
  EXPECT_EQ(occbloom::committee_mean_variance(7, 0, 3).mean, q(0));
}

TEST(CommitteeOccupancy, FirstMomentClosedForm) {
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned k = 1; k <= m; ++k) {
      for (unsigned n = 0; n <= 5; ++n) {
        const Rational closed = Rational(m) * (q(1) - (q(1) - q(k, m)).pow(n));
        EXPECT_EQ(occbloom::committee_moment(m, n, k, 1, MomentKind::Raw), closed);
      }
    }
  }
}

TEST(CommitteeOccupancy, MomentKindsInterconvert) {
  for (unsigned m = 2; m <= 8; ++m) {
    for (unsigned k = 1; k <= m; ++k) {
      for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned r = 0; r <= 5; ++r) {
          const Rational fact = occbloom::committee_moment(m, n, k, r, MomentKind::Factorial);
          const Rational binom = occbloom::committee_moment(m, n, k, r, MomentKind::Binomial);
          EXPECT_EQ(binom, fact / Rational(occbloom::factorial(r)));
          Rational raw = 0;
          for (unsigned i = 0; i <= r; ++i) {
            raw += Rational(occbloom::stirling2(r, i)) *
                   occbloom::committee_moment(m, n, k, i, MomentKind::Factorial);
          }
          EXPECT_EQ(occbloom::committee_moment(m, n, k, r, MomentKind::Raw), raw);
        }
      }
    }
  }
}

TEST(UnionOccupancy, Examples) {
  const CommitteeSpec single(5, {{2, 3}});
  EXPECT_EQ(occbloom::union_pmf(single, 4), q(3, 5));
  const CommitteeSpec pair(4, {{1, 2}, {1, 2}});
  EXPECT_EQ(occbloom::union_moment(pair, 1, MomentKind::Binomial), q(3));
  EXPECT_EQ(occbloom::union_pmf(pair, 5), q(0));
  EXPECT_THROW(CommitteeSpec(4, {{0, 2}}), occbloom::DomainError);
  EXPECT_THROW(CommitteeSpec(4, {}), occbloom::DomainError);
  EXPECT_THROW(CommitteeSpec(4, {{1, 5}}), occbloom::DomainError);
}

TEST(IntersectionOccupancy, Examples) {
  const CommitteeSpec halves(4, {{1, 2}, {1, 2}});
  EXPECT_EQ(occbloom::intersection_moment(halves, 1), q(1));
  const CommitteeSpec bits(2, {{1, 1}, {1, 1}});
  EXPECT_EQ(occbloom::intersection_moment(bits, 1), q(1, 2));
  EXPECT_EQ(occbloom::intersection_moment(bits, 0), q(1));
  EXPECT_EQ(occbloom::intersection_pmf(bits, 1), q(1, 2));
  EXPECT_EQ(occbloom::intersection_pmf(bits, 0), q(1, 2));
  const CommitteeSpec one(6, {{3, 2}});
  for (unsigned i = 0; i <= 6; ++i) {
    EXPECT_EQ(occbloom::intersection_pmf(one, i), occbloom::committee_pmf(6, 3, 2, i));
  }
}

TEST(MomentBounds, Examples) {
  EXPECT_THROW(occbloom::moment_bounds(5, 2, 3, 3), occbloom::DomainError);
  EXPECT_NO_THROW(occbloom::moment_bounds(5, 2, 3, 2));
  const auto b0 = occbloom::moment_bounds(9, 3, 4, 0);
  EXPECT_EQ(b0.lower, q(1));
  EXPECT_EQ(b0.jensen, q(1));
  EXPECT_EQ(b0.upper, q(1));

  const auto b = occbloom::moment_bounds(10, 2, 3, 2);
  EXPECT_EQ(b.lower, occbloom::nabla_power(10, 6, 2) / Rational(1000000L));
  EXPECT_EQ(b.upper, q(51, 100).pow(2));
  const Rational normalized =
      occbloom::committee_moment(10, 2, 3, 2, MomentKind::Binomial) / Rational(occbloom::binomial(10L, 2));
  EXPECT_LE(b.lower, b.jensen);
  EXPECT_LE(b.jensen, normalized);
  EXPECT_LE(normalized, b.upper);
}

// Exhaustive enumeration for small urn counts: every pmf and low moment.
TEST(OccupancyOracle, ClassicAndCommitteeMatchEnumeration) {
  for (unsigned m = 1; m <= 6; ++m) {
    for (unsigned balls = 0; balls <= 8; ++balls) {
      const auto tally = occbloom::oracle::single_balls(m, balls);
      const auto pmf = occbloom::oracle::occupancy_pmf(tally);
      for (unsigned i = 0; i <= m; ++i) EXPECT_EQ(occbloom::classic_pmf(m, balls, i), pmf[i]);
      for (unsigned r = 0; r <= 4; ++r) {
        EXPECT_EQ(occbloom::classic_raw_moment(m, balls, r), occbloom::oracle::raw_moment(tally, r));
      }
    }
    for (unsigned k = 1; k <= m; ++k) {
      for (unsigned n = 0; n * k <= 8; ++n) {
        const auto tally = occbloom::oracle::batches(m, n, k);
        const auto pmf = occbloom::oracle::occupancy_pmf(tally);
        for (unsigned i = 0; i <= m; ++i) EXPECT_EQ(occbloom::committee_pmf(m, n, k, i), pmf[i]);
        for (unsigned r = 0; r <= 4; ++r) {
          EXPECT_EQ(occbloom::committee_moment(m, n, k, r, MomentKind::Raw),
                    occbloom::oracle::raw_moment(tally, r));
        }
      }
    }
  }
}

TEST(OccupancyOracle, UnionAndIntersectionMatchEnumeration) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    std::uniform_int_distribution<unsigned> mm(1, 5);
    const unsigned m = mm(rng);
    std::uniform_int_distribution<unsigned> kk(1, m);
    std::uniform_int_distribution<unsigned> nn(1, 2);
    std::uniform_int_distribution<unsigned> cc(1, 3);
    std::vector<Department> deps;
    unsigned balls = 0;
    const unsigned c = cc(rng);
    for (unsigned d = 0; d < c; ++d) {
      const Department dep{nn(rng), kk(rng)};
      if (balls + dep.n * dep.k > 8) break;
      balls += dep.n * dep.k;
      deps.push_back(dep);
    }
    if (deps.empty()) deps.push_back({1, 1});
    const CommitteeSpec spec(m, deps);
    const auto ref = occbloom::oracle::colored(m, deps);
    for (unsigned i = 0; i <= m; ++i) {
      EXPECT_EQ(occbloom::union_pmf(spec, i), ref.union_pmf[i]);
      EXPECT_EQ(occbloom::intersection_pmf(spec, i), ref.intersection_pmf[i]);
    }
    EXPECT_EQ(occbloom::intersection_moment(spec, 1), occbloom::oracle::mean_of(ref.intersection_pmf));
    EXPECT_EQ(occbloom::union_moment(spec, 1, MomentKind::Raw), occbloom::oracle::mean_of(ref.union_pmf));
  }
}

TEST(OccupancyInvariants, PmfsSumToOne) {
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned n = 0; n <= 12; ++n) {
      Rational s = 0;
      for (unsigned i = 0; i <= m; ++i) s += occbloom::classic_pmf(m, n, i);
      EXPECT_EQ(s, q(1));
    }
  }
}

TEST(OccupancyInvariants, ComplementDuality) {
  for (unsigned m = 2; m <= 9; ++m) {
    for (unsigned a = 1; a < m; ++a) {
      for (unsigned b = 1; b < m; ++b) {
        const CommitteeSpec spec(m, {{1, a}, {1, b}});
        const CommitteeSpec dual(m, {{1, m - a}, {1, m - b}});
        for (unsigned i = 0; i <= m; ++i) {
          EXPECT_EQ(occbloom::intersection_pmf(spec, i), occbloom::union_pmf(dual, m - i));
        }
      }
    }
  }
}
