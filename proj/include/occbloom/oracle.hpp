#pragma once

// Brute-force reference values obtained by enumerating every equally likely
// outcome. Exponential in the problem size; meant for m <= 6 or so. Nothing
// here calls the closed forms it is used to check.

#include <cstdint>
#include <vector>

#include "occbloom/exact.hpp"
#include "occbloom/occupancy.hpp"

namespace occbloom::oracle {

/// Weight of each occupied-urn bitmask over all equally likely outcomes.
struct MaskTally {
  unsigned m = 0;
  std::vector<BigInt> weight;  // indexed by bitmask, size 2^m
  BigInt total = 0;            // number of outcomes
};

/// `balls` independent uniform balls.
MaskTally single_balls(unsigned m, unsigned balls);
/// n batches, each a uniformly chosen k-subset.
MaskTally batches(unsigned m, unsigned n, unsigned k);

/// P(popcount = i) for i = 0..m.
std::vector<Rational> occupancy_pmf(const MaskTally& tally);
/// E[popcount^r].
Rational raw_moment(const MaskTally& tally, unsigned r);

/// Expected pass rate of a probe that draws k independent uniform positions.
Rational standard_probe_rate(const MaskTally& tally, unsigned k);
/// Expected pass rate of a probe that draws a uniform k-subset.
Rational classic_probe_rate(const MaskTally& tally, unsigned k);

/// Enumerated false-positive rates of the two filter variants.
Rational standard_fpr(unsigned m, unsigned n, unsigned k);
Rational classic_fpr(unsigned m, unsigned n, unsigned k);

/// Joint enumeration over several independently cast departments.
struct ColoredPmf {
  std::vector<Rational> union_pmf;         // urns hit by any color
  std::vector<Rational> intersection_pmf;  // urns hit by every color
};
ColoredPmf colored(unsigned m, const std::vector<Department>& departments);

Rational mean_of(const std::vector<Rational>& pmf);
Rational variance_of(const std::vector<Rational>& pmf);

}  // namespace occbloom::oracle
