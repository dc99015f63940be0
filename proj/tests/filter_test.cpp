#include "occbloom/filter.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "occbloom/analytics.hpp"
#include "occbloom/errors.hpp"
#include "occbloom/montecarlo.hpp"
#include "occbloom/occupancy.hpp"

using occbloom::BloomFilter;
using occbloom::FilterParams;
using occbloom::FilterVariant;

namespace {

FilterParams make(std::uint64_t m, std::uint32_t k, FilterVariant v, std::uint64_t seed = 0) {
  FilterParams p;
  p.m = m;
  p.k = k;
  p.variant = v;
  p.seed = occbloom::seed_from_u64(seed);
  return p;
}

std::string item(unsigned i) { return "item-" + std::to_string(i); }

}  // namespace

TEST(FilterBasics, Construction) {
  EXPECT_EQ(BloomFilter(make(8, 3, FilterVariant::Classic)).bit_sum(), 0U);
  EXPECT_NO_THROW(BloomFilter(make(1, 1, FilterVariant::Standard)));
  EXPECT_THROW(BloomFilter(make(8, 9, FilterVariant::Standard)), occbloom::DomainError);
  EXPECT_THROW(BloomFilter(make(8, 0, FilterVariant::Classic)), occbloom::DomainError);
  EXPECT_THROW(BloomFilter(make(0, 1, FilterVariant::Classic)), occbloom::DomainError);
}

TEST(FilterBasics, VariantNames) {
  EXPECT_EQ(occbloom::parse_variant("classic"), FilterVariant::Classic);
  EXPECT_EQ(occbloom::parse_variant("standard"), FilterVariant::Standard);
  EXPECT_THROW(occbloom::parse_variant("blocked"), occbloom::DomainError);
}

TEST(IndexStream, Deterministic) {
  const auto seed = occbloom::seed_from_u64(99);
  EXPECT_EQ(occbloom::derive_positions(seed, "abc", 1000, 20, false),
            occbloom::derive_positions(seed, "abc", 1000, 20, false));
  EXPECT_NE(occbloom::derive_positions(seed, "abc", 1000, 20, false),
            occbloom::derive_positions(occbloom::seed_from_u64(98), "abc", 1000, 20, false));
}

TEST(IndexStream, ClassicFullWidthIsPermutation) {
  for (unsigned e = 0; e < 50; ++e) {
    auto pos = occbloom::derive_positions(occbloom::seed_from_u64(e), item(e), 4, 4, true);
    std::set<std::uint64_t> distinct(pos.begin(), pos.end());
    EXPECT_EQ(distinct, (std::set<std::uint64_t>{0, 1, 2, 3}));
  }
}

TEST(IndexStream, UniformPositions) {
  // 10^6 draws over m = 37 (not a power of two, so rejection matters).
  const std::uint64_t m = 37;
  std::vector<double> counts(m, 0);
  const auto seed = occbloom::seed_from_u64(5);
  const unsigned elements = 50000, per = 20;
  for (unsigned e = 0; e < elements; ++e) {
    occbloom::PositionStream s(seed, item(e), m);
    for (unsigned j = 0; j < per; ++j) counts[s.next()] += 1;
  }
  const double total = static_cast<double>(elements) * per;
  const double p = 1.0 / m;
  const double sigma = std::sqrt(total * p * (1 - p));
  for (double c : counts) EXPECT_LT(std::abs(c - total * p), 5 * sigma);
}

TEST(FilterOps, InsertQueryAndBitSum) {
  BloomFilter classic(make(8, 3, FilterVariant::Classic));
  EXPECT_FALSE(classic.query("x"));
  classic.insert("x");
  EXPECT_TRUE(classic.query("x"));
  EXPECT_EQ(classic.bit_sum(), 3U);
  EXPECT_EQ(classic.count(), 1U);

  for (unsigned e = 0; e < 100; ++e) {
    BloomFilter standard(make(8, 3, FilterVariant::Standard, e));
    standard.insert(item(e));
    EXPECT_GE(standard.bit_sum(), 1U);
    EXPECT_LE(standard.bit_sum(), 3U);
  }
}

TEST(FilterOps, NoFalseNegatives) {
  for (auto v : {FilterVariant::Classic, FilterVariant::Standard}) {
    BloomFilter f(make(512, 5, v, 3));
    for (unsigned i = 0; i < 300; ++i) f.insert(item(i));
    for (unsigned i = 0; i < 300; ++i) EXPECT_TRUE(f.query(item(i)));
    EXPECT_LE(f.bit_sum(), 300U * 5U);
  }
}

TEST(FilterOps, UnionAndIntersection) {
  const auto p = make(256, 4, FilterVariant::Standard, 17);
  BloomFilter a(p), b(p), empty(p);
  for (unsigned i = 0; i < 20; ++i) a.insert(item(i));
  for (unsigned i = 20; i < 45; ++i) b.insert(item(i));

  const BloomFilter ua = occbloom::filter_union(a, empty);
  for (std::uint64_t bit = 0; bit < p.m; ++bit) EXPECT_EQ(ua.test(bit), a.test(bit));
  EXPECT_EQ(occbloom::filter_intersect(a, a).bit_sum(), a.bit_sum());

  const BloomFilter u = occbloom::filter_union(a, b);
  EXPECT_EQ(u.count(), 45U);
  for (unsigned i = 0; i < 45; ++i) EXPECT_TRUE(u.query(item(i)));
  EXPECT_FALSE(occbloom::filter_intersect(a, b).count().has_value());

  BloomFilter other(make(256, 4, FilterVariant::Standard, 18));
  EXPECT_THROW(occbloom::filter_union(a, other), occbloom::IncompatibleFilters);
  BloomFilter classic(make(256, 4, FilterVariant::Classic, 17));
  EXPECT_THROW(occbloom::filter_intersect(a, classic), occbloom::IncompatibleFilters);
}

TEST(Serialization, GoldenEmptyFilter) {
  const BloomFilter f(make(8, 1, FilterVariant::Standard, 0));
  const std::vector<std::uint8_t> expected = {
      'O', 'B', 'F', '1',                      // magic
      0x01, 0x00,                              // format version
      0x01,                                    // variant: standard
      0x01,                                    // hash scheme
      0x08, 0, 0, 0, 0, 0, 0, 0,               // m
      0x01, 0, 0, 0,                           // k
      0, 0, 0, 0, 0, 0, 0, 0,                  // count
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,  // seed
      0x00};                                   // bits
  EXPECT_EQ(f.serialize(), expected);
  EXPECT_EQ(expected.size(), occbloom::kHeaderSize + 1);
}

TEST(Serialization, RoundTrip) {
  for (auto v : {FilterVariant::Classic, FilterVariant::Standard}) {
    for (std::uint64_t m : {1ULL, 7ULL, 8ULL, 9ULL, 1000ULL}) {
      BloomFilter f(make(m, 1, v, m * 31));
      for (unsigned i = 0; i < 5; ++i) f.insert(item(i));
      const auto bytes = f.serialize();
      EXPECT_EQ(bytes.size(), occbloom::kHeaderSize + (m + 7) / 8);
      EXPECT_EQ(BloomFilter::deserialize(bytes), f);
    }
  }
  // An intersection round-trips its unknown count.
  const auto p = make(64, 2, FilterVariant::Classic, 4);
  BloomFilter a(p), b(p);
  a.insert("a");
  b.insert("a");
  const BloomFilter x = occbloom::filter_intersect(a, b);
  EXPECT_EQ(BloomFilter::deserialize(x.serialize()), x);
}

TEST(Serialization, DistinctStatesSerializeDistinctly) {
  const auto p = make(64, 2, FilterVariant::Classic, 4);
  BloomFilter a(p), b(p);
  a.insert("a");
  b.insert("b");
  EXPECT_NE(a.serialize(), b.serialize());
  BloomFilter c(make(64, 2, FilterVariant::Standard, 4));
  EXPECT_NE(BloomFilter(p).serialize(), c.serialize());
}

TEST(Serialization, RejectsMalformedInput) {
  BloomFilter f(make(12, 2, FilterVariant::Standard, 1));
  f.insert("z");
  const auto good = f.serialize();
  auto expect_offset = [](std::vector<std::uint8_t> bytes, std::size_t offset) {
    try {
      BloomFilter::deserialize(bytes);
      ADD_FAILURE() << "accepted malformed input";
    } catch (const occbloom::FormatError& e) {
      EXPECT_EQ(e.offset(), offset) << e.what();
    }
  };
  expect_offset({good.begin(), good.begin() + 20}, 20);
  auto bad = good;
  bad[1] = 'X';
  expect_offset(bad, 1);
  bad = good;
  bad[4] = 2;
  expect_offset(bad, 4);
  bad = good;
  bad[6] = 7;
  expect_offset(bad, 6);
  bad = good;
  bad[7] = 9;
  expect_offset(bad, 7);
  bad = good;
  std::fill(bad.begin() + 8, bad.begin() + 16, 0);
  expect_offset(bad, 8);
  bad = good;
  bad[16] = 13;
  expect_offset(bad, 16);
  expect_offset({good.begin(), good.end() - 1}, good.size() - 1);
  bad = good;
  bad.push_back(0);
  expect_offset(bad, good.size());
  bad = good;
  bad.back() |= 0x80;  // bit 15 of a 12-bit filter
  expect_offset(bad, good.size() - 1);
}

TEST(Cardinality, EmptyAndSaturated) {
  BloomFilter f(make(16, 2, FilterVariant::Classic));
  EXPECT_EQ(occbloom::estimate_cardinality(f), 0.0);
  BloomFilter s(make(4, 4, FilterVariant::Standard));
  for (unsigned i = 0; i < 200 && s.bit_sum() < 4; ++i) s.insert(item(i));
  ASSERT_EQ(s.bit_sum(), 4U);
  EXPECT_THROW(occbloom::estimate_cardinality(s), occbloom::SaturationError);
}

TEST(Cardinality, ClassicEstimateTracksItemCount) {
  // m = 1024, k = 8, n = 50 over 1000 filter seeds. The delta method turns
  // the exact bit-sum deviation into a deviation of the estimate.
  const unsigned m = 1024, k = 8, n = 50, seeds = 1000;
  const auto mv = occbloom::committee_mean_variance(m, n, k);
  const double r = 1.0 - static_cast<double>(k) / m;
  const double slope = -static_cast<double>(m) * std::pow(r, n) * std::log(r);
  const double sigma_n = std::sqrt(mv.variance.to_double()) / slope;
  double sum = 0;
  unsigned outside = 0;
  for (unsigned s = 0; s < seeds; ++s) {
    BloomFilter f(make(m, k, FilterVariant::Classic, 1000 + s));
    for (unsigned i = 0; i < n; ++i) f.insert(item(s * n + i));
    const double est = occbloom::estimate_cardinality(f);
    sum += est;
    if (std::abs(est - n) > 3 * sigma_n) ++outside;
  }
  EXPECT_NEAR(sum / seeds, n, 4 * sigma_n / std::sqrt(seeds) + 0.05);
  EXPECT_LE(outside, 10U);  // ~0.3% expected beyond 3 sigma
}

TEST(FilterStatistics, UnionMeanMatchesAggregatedOccupancy) {
  // Union of filters holding 6 and 9 items behaves like one filter of 15.
  const unsigned m = 64, k = 3, trials = 10000;
  const double exact = occbloom::committee_mean_variance(m, 15, k).mean.to_double();
  const double sd = std::sqrt(occbloom::committee_mean_variance(m, 15, k).variance.to_double());
  double sum = 0;
  for (unsigned t = 0; t < trials; ++t) {
    const auto p = make(m, k, FilterVariant::Classic, t);
    BloomFilter a(p), b(p);
    for (unsigned i = 0; i < 6; ++i) a.insert(occbloom::trial_element(1, false, t, i));
    for (unsigned i = 6; i < 15; ++i) b.insert(occbloom::trial_element(1, false, t, i));
    sum += static_cast<double>(occbloom::filter_union(a, b).bit_sum());
  }
  EXPECT_LT(std::abs(sum / trials - exact), 4 * sd / std::sqrt(trials));
}

TEST(FilterStatistics, IntersectionMeanMatchesExactMoment) {
  const unsigned m = 32, k = 2, trials = 10000;
  const std::vector<unsigned> counts{5, 7};
  const auto mv = occbloom::intersection_filter_moments(m, k, counts);
  double sum = 0;
  for (unsigned t = 0; t < trials; ++t) {
    const auto p = make(m, k, FilterVariant::Standard, t);
    BloomFilter a(p), b(p);
    for (unsigned i = 0; i < counts[0]; ++i) a.insert(occbloom::trial_element(2, false, t, i));
    for (unsigned i = 0; i < counts[1]; ++i) b.insert(occbloom::trial_element(3, false, t, i));
    sum += static_cast<double>(occbloom::filter_intersect(a, b).bit_sum());
  }
  const double se = std::sqrt(mv.variance.to_double() / trials);
  EXPECT_LT(std::abs(sum / trials - mv.mean.to_double()), 4 * se);
}
