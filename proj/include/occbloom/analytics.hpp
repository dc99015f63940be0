#pragma once

// False-positive rates of classic and standard Bloom filters: exact values,
// approximations and bounds, optimal parameters, and filter efficiency.
//
// Throughout, m is the filter length in bits, n the number of stored items
// and k the number of hash bits per item.

#include <vector>

#include "occbloom/exact.hpp"
#include "occbloom/filter.hpp"
#include "occbloom/occupancy.hpp"

namespace occbloom {

/// Exact expected FPR of a standard filter:
///   m^{-(n+1)k} sum_i S(k, i) m^(i) nabla^i [x^{nk}] at m.
/// Throws DomainError for m = 0 or k = 0.
Rational fpr_standard_exact(unsigned m, unsigned n, unsigned k);

/// Exact expected FPR of a classic filter:
///   sum_i (-1)^i C(k, i) [C(m - i, k) / C(m, k)]^n.
/// Throws DomainError unless 1 <= k <= m.
Rational fpr_classic_exact(unsigned m, unsigned n, unsigned k);

Rational fpr_exact(FilterVariant variant, unsigned m, unsigned n, unsigned k);

/// Floating-point evaluation of the two-term recursions for either variant.
/// Approximate; agrees with the exact value to about 6 significant digits
/// while that value stays above 1e-12.
double fpr_recursive(FilterVariant variant, unsigned m, unsigned n, unsigned k);

struct FprBounds {
  double E = 0;      // (1 - e^{-kn/m})^k
  double M = 0;      // (1 - (1 - 1/m)^{kn})^k
  Rational L;        // nabla^k [x^{nk}] at m / m^{nk}
  Rational U;        // (1 - (1 - k/m)^n)^k
  /// True when k <= (m - 1)/2, where L <= f <= U (and E <= M <= f_S) hold.
  bool ordered = false;
};

FprBounds fpr_bounds(unsigned m, unsigned n, unsigned k);

/// M as an exact rational, for checking the ordering without rounding.
Rational fpr_middle_exact(unsigned m, unsigned n, unsigned k);

/// Second-order Taylor approximation of the standard FPR around the mean
/// occupancy of nk balls: (mu/m)^k (1 + sigma^2 k(k-1) / (2 mu^2)).
double fpr_taylor(unsigned m, unsigned n, unsigned k);

struct FprReport {
  FilterVariant variant = FilterVariant::Standard;
  unsigned m = 0;
  unsigned n = 0;
  unsigned k = 0;
  Rational exact;
  FprBounds bounds;
  double taylor = 0;
  /// log2 of the exact FPR; -infinity when it is zero.
  double log2_exact = 0;
  /// Filter efficiency; absent when the FPR is zero.
  bool has_efficiency = false;
  double efficiency = 0;
};

FprReport analyze(FilterVariant variant, unsigned m, unsigned n, unsigned k);

struct OptimalK {
  unsigned k = 1;       // smallest minimizer
  unsigned k_last = 1;  // largest minimizer (equal to k unless tied)
  Rational fpr;
  double log2_fpr = 0;
};

/// Minimizes the exact FPR over k = 1..m; ties go to the smaller k.
/// n = 0 gives k = 1 with FPR 0.
OptimalK optimal_k_exact(FilterVariant variant, unsigned m, unsigned n);

/// (m/n) ln 2, unrounded.
double optimal_k_estimate(unsigned m, unsigned n);

/// Closed-form estimates -m ln2 / log2 p and -n log2 p / ln 2.
double capacity_n_estimate(unsigned m, double p);
double size_m_estimate(unsigned n, double p);

/// Largest n whose optimal exact FPR does not exceed p. Throws DomainError
/// unless 0 < p < 1 and InfeasibleError when even one item misses p.
unsigned capacity_n_max(FilterVariant variant, unsigned m, double p);

/// Smallest m whose optimal exact FPR for n items does not exceed p. Throws
/// DomainError unless 0 < p < 1 and n >= 1, InfeasibleError when the search
/// runs past `m_limit`.
unsigned size_m_min(FilterVariant variant, unsigned n, double p, unsigned m_limit = 1U << 16);

/// -(n/m) log2 f(m, n, k). Throws UndefinedEfficiency when f = 0.
double efficiency(FilterVariant variant, unsigned m, unsigned n, unsigned k);

struct EfficiencyPoint {
  unsigned n = 0;
  unsigned k = 0;
  double epsilon = 0;
  /// Set when the point rests on an unproven claim about where the maximum lies.
  bool conjectured = false;
};

/// Item count maximizing efficiency at fixed (m, k); ties go to smaller n.
EfficiencyPoint peak_efficiency(FilterVariant variant, unsigned m, unsigned k);

/// Maximum efficiency over n and k. Standard: 1/(m log2(m/(m-1))) at k = 1,
/// n = round(1/log2(m/(m-1))). Classic: n = 1, k = floor(m/2), flagged as
/// conjectured. Throws DomainError for m < 2.
EfficiencyPoint max_efficiency(FilterVariant variant, unsigned m);

/// Positive root x of (1 - e^{-kx})^k = (1 - e^{-(k+1)x})^{k+1}, found as
/// x = ln z with z the fixed point of z <- (1 + z)^{1/(k+1)}.
double valley_crossing(unsigned k);

/// Mean and variance of the bit sum of the AND of standard filters of
/// length m with k hash bits holding counts[i] items each.
MeanVariance intersection_filter_moments(unsigned m, unsigned k,
                                         const std::vector<unsigned>& counts);

}  // namespace occbloom
