#include "occbloom/estimators.hpp"

#include <string>

#include "occbloom/errors.hpp"

namespace occbloom {

namespace {

// delta^i [C(x, k)^n] at x = 0.
BigInt committee_forward_difference(unsigned i, unsigned n, unsigned k) {
  BigInt sum = 0;
  for (unsigned j = 0; j <= i; ++j) {
    BigInt c = binomial(static_cast<long>(j), k);
    if (c == 0) continue;
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), c.get_mpz_t(), n);
    BigInt term = binomial(static_cast<long>(i), j) * p;
    if ((i - j) % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

}  // namespace

double estimate_n(unsigned m, unsigned k, const Rational& mu) {
  if (m == 0 || k == 0 || k > m) throw DomainError("estimate_n requires 1 <= k <= m");
  const Rational urns(static_cast<long>(m));
  if (mu.sign() < 0) throw DomainError("occupancy must be non-negative");
  if (mu > urns) throw DomainError("occupancy " + mu.str() + " exceeds m=" + std::to_string(m));
  if (mu == urns) throw SaturationError("every urn is occupied; the estimate diverges");
  if (mu.is_zero()) return 0.0;
  if (k == m) throw DomainError("k = m forces full occupancy after one batch");
  // Both logarithms are taken of exact rationals, which keeps precision when
  // mu/m is close to 1.
  Rational empty_fraction = (urns - mu) / urns;
  Rational survive = Rational(BigInt(m - k), BigInt(m));
  return empty_fraction.log2() / survive.log2();
}

Rational mvue_m_committee(unsigned mu, unsigned n, unsigned k) {
  if (k == 0 || n == 0) throw DomainError("mvue_m_committee requires n, k >= 1");
  if (mu < k || static_cast<unsigned long>(mu) > static_cast<unsigned long>(n) * k) {
    throw DomainError("observed occupancy must lie in [k, n k]");
  }
  BigInt top = committee_forward_difference(mu, n, k);
  if (top == 0) throw UnsupportedObservation("forward difference of order mu vanishes");
  BigInt below = committee_forward_difference(mu - 1, n, k);
  return Rational(static_cast<long>(mu)) * (Rational(1) + Rational(below, top));
}

Rational mvue_m_classic(unsigned mu, unsigned n, UrnRegime regime) {
  if (mu < 1 || mu > n) throw DomainError("observed occupancy must lie in [1, n]");
  BigInt base = stirling2(n, mu);
  if (base == 0) throw UnsupportedObservation("S(n, mu) vanishes");
  if (regime == UrnRegime::MoreUrnsThanBalls) {
    return Rational(static_cast<long>(mu)) + Rational(stirling2(n, mu - 1), base);
  }
  return Rational(stirling2(n + 1, mu), base);
}

}  // namespace occbloom
