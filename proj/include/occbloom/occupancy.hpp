#pragma once

// Exact distributions of the occupancy number for the classic urn model, the
// committee (batch) model, and the multivariate committee union/intersection
// models. All results are exact rationals.

#include <cstdint>
#include <utility>
#include <vector>

#include "occbloom/exact.hpp"

namespace occbloom {

enum class MomentKind { Raw, Factorial, Binomial };

/// One department: n batches (committees) of k distinct urns each.
struct Department {
  unsigned n = 0;
  unsigned k = 0;
};

/// m urns shared by one or more departments (ball colors).
class CommitteeSpec {
 public:
  /// Throws DomainError unless m >= 1, departments is non-empty, and every
  /// department has n >= 1 and 1 <= k <= m.
  CommitteeSpec(unsigned m, std::vector<Department> departments);

  unsigned m() const { return m_; }
  const std::vector<Department>& departments() const { return departments_; }

  /// Committee sizes flattened to one entry per batch.
  std::vector<unsigned> flattened_sizes() const;
  /// Total balls N = sum n_d k_d.
  unsigned long total_balls() const;
  bool single_committees() const;

 private:
  unsigned m_;
  std::vector<Department> departments_;
};

struct MeanVariance {
  Rational mean;
  Rational variance;
};

struct MomentBounds {
  Rational lower;   // nabla^r [x^{nk}]_m / m^{nk}
  Rational jensen;  // C(mu, r) / C(m, r)
  Rational upper;   // (mu / m)^r
};

// Classic occupancy: n balls into m urns.
Rational classic_pmf(unsigned m, unsigned long n, unsigned i);
Rational classic_raw_moment(unsigned m, unsigned long n, unsigned r);
Rational classic_moment(unsigned m, unsigned long n, unsigned r, MomentKind kind);
MeanVariance classic_mean_variance(unsigned m, unsigned long n);

// Committee occupancy: n batches of k distinct urns.
Rational committee_pmf(unsigned m, unsigned n, unsigned k, unsigned i);
Rational committee_moment(unsigned m, unsigned n, unsigned k, unsigned r, MomentKind kind);
MeanVariance committee_mean_variance(unsigned m, unsigned n, unsigned k);

// Multivariate committee union and intersection.
Rational union_pmf(const CommitteeSpec& spec, unsigned i);
Rational union_moment(const CommitteeSpec& spec, unsigned r, MomentKind kind);
/// Binomial moment E[C(X_and, r)].
Rational intersection_moment(const CommitteeSpec& spec, unsigned r);
Rational intersection_pmf(const CommitteeSpec& spec, unsigned i);

/// Bounds on the normalized committee binomial moment E[C(X, r)] / C(m, r).
/// Throws DomainError unless 0 <= r <= min(k, m - k).
MomentBounds moment_bounds(unsigned m, unsigned n, unsigned k, unsigned r);

/// Converts a sequence of binomial moments b_0..b_r into the raw moment E[X^r].
Rational raw_from_binomial(const std::vector<Rational>& binomial_moments, unsigned r);

}  // namespace occbloom
