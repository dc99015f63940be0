#pragma once

#include "occbloom/exact.hpp"

namespace occbloom {

/// Method-of-moments (and ML) estimate of the batch count n from an observed
/// occupancy mu with m urns and batch size k:
///   n = ln(1 - mu/m) / ln(1 - k/m).
/// Returns a real value; rounding is left to the caller.
/// Throws SaturationError when mu == m and DomainError when mu > m, mu < 0,
/// or k outside [1, m].
double estimate_n(unsigned m, unsigned k, const Rational& mu);

/// MVUE of the urn count m from an observed committee occupancy mu
/// (n batches of size k). Requires k <= mu <= n k. Throws
/// UnsupportedObservation when delta^mu [C(x,k)^n] at 0 vanishes.
Rational mvue_m_committee(unsigned mu, unsigned n, unsigned k);

/// Which branch of the classic urn-count MVUE applies. The urn count is the
/// unknown, so the caller chooses.
enum class UrnRegime {
  MoreUrnsThanBalls,   // m > n
  AtMostAsManyUrns,    // m <= n
};

/// MVUE of the urn count m from an observed classic occupancy mu with n balls.
/// Requires 1 <= mu <= n. Throws UnsupportedObservation when S(n, mu) = 0.
Rational mvue_m_classic(unsigned mu, unsigned n, UrnRegime regime);

}  // namespace occbloom
