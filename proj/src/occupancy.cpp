#include "occbloom/occupancy.hpp"

#include <algorithm>
#include <string>

#include "occbloom/errors.hpp"

namespace occbloom {

namespace {

// Above this ball count the Stirling table would dominate memory, so the
// classic p.m.f. switches to the equivalent forward-difference form.
constexpr unsigned long kStirlingPmfLimit = 512;

Rational power_ratio(long num, long den, unsigned long e) {
  return Rational(BigInt(num), BigInt(den)).pow(e);
}

BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Factorial and raw moments from the normalized binomial moment
// E[C(X, r)] / C(m, r), which is what every family computes natively.
Rational scale_moment(unsigned m, unsigned r, const Rational& normalized, MomentKind kind) {
  switch (kind) {
    case MomentKind::Binomial:
      return Rational(binomial(static_cast<long>(m), r)) * normalized;
    case MomentKind::Factorial:
      return Rational(falling_factorial(static_cast<long>(m), r)) * normalized;
    case MomentKind::Raw:
      break;
  }
  throw DomainError("raw moments are assembled by the caller");
}

template <typename NormalizedFn>
Rational moment_of(unsigned m, unsigned r, MomentKind kind, NormalizedFn&& normalized) {
  if (kind != MomentKind::Raw) return scale_moment(m, r, normalized(r), kind);
  if (r == 0) return 1;
  Rational sum = 0;
  for (unsigned i = 1; i <= std::min(r, m); ++i) {
    sum += Rational(stirling2(r, i)) *
           scale_moment(m, i, normalized(i), MomentKind::Factorial);
  }
  return sum;
}

std::vector<unsigned> repeated(unsigned k, unsigned n) { return std::vector<unsigned>(n, k); }

void require_batch(unsigned m, unsigned k) {
  if (m == 0) throw DomainError("urn count must be positive");
  if (k == 0 || k > m) {
    throw DomainError("batch size k=" + std::to_string(k) + " must lie in [1, m=" +
                      std::to_string(m) + "]");
  }
}

// E[C(X, r)] / C(m, r) for n batches of size k; n = 0 is the point mass at 0.
Rational committee_normalized(unsigned m, unsigned n, unsigned k, unsigned r) {
  if (r == 0) return 1;
  if (r > m || n == 0) return 0;
  auto ks = repeated(k, n);
  return rho(r, m, ks);
}

}  // namespace

// ---------------------------------------------------------------------------
// CommitteeSpec
// ---------------------------------------------------------------------------

CommitteeSpec::CommitteeSpec(unsigned m, std::vector<Department> departments)
    : m_(m), departments_(std::move(departments)) {
  if (m_ == 0) throw DomainError("committee spec needs at least one urn");
  if (departments_.empty()) throw DomainError("committee spec needs a department");
  for (const auto& d : departments_) {
    if (d.n == 0) throw DomainError("department batch count must be positive");
    require_batch(m_, d.k);
  }
}

std::vector<unsigned> CommitteeSpec::flattened_sizes() const {
  std::vector<unsigned> out;
  for (const auto& d : departments_) out.insert(out.end(), d.n, d.k);
  return out;
}

unsigned long CommitteeSpec::total_balls() const {
  unsigned long total = 0;
  for (const auto& d : departments_) total += static_cast<unsigned long>(d.n) * d.k;
  return total;
}

bool CommitteeSpec::single_committees() const {
  return std::all_of(departments_.begin(), departments_.end(),
                     [](const Department& d) { return d.n == 1; });
}

// ---------------------------------------------------------------------------
// Classic occupancy
// ---------------------------------------------------------------------------

Rational classic_pmf(unsigned m, unsigned long n, unsigned i) {
  if (m == 0) throw DomainError("urn count must be positive");
  if (n == 0) return i == 0 ? 1 : 0;
  if (i == 0 || i > m || i > n) return 0;
  BigInt denom = pow_ui(BigInt(m), n);
  if (n <= kStirlingPmfLimit) {
    return Rational(stirling2(static_cast<unsigned>(n), i) *
                        falling_factorial(static_cast<long>(m), i),
                    denom);
  }
  // i! S(n, i) = delta^i [x^n] at 0.
  BigInt sum = 0;
  for (unsigned j = 0; j <= i; ++j) {
    BigInt term = binomial(static_cast<long>(i), j) * pow_ui(BigInt(j), n);
    if ((i - j) % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational(binomial(static_cast<long>(m), i) * sum, denom);
}

Rational classic_moment(unsigned m, unsigned long n, unsigned r, MomentKind kind) {
  if (m == 0) throw DomainError("urn count must be positive");
  auto normalized = [&](unsigned order) -> Rational {
    if (order == 0) return 1;
    if (order > m) return 0;
    return nabla_power(static_cast<long>(m), static_cast<unsigned>(n), order) /
           Rational(pow_ui(BigInt(m), n));
  };
  return moment_of(m, r, kind, normalized);
}

Rational classic_raw_moment(unsigned m, unsigned long n, unsigned r) {
  return classic_moment(m, n, r, MomentKind::Raw);
}

MeanVariance classic_mean_variance(unsigned m, unsigned long n) {
  if (m == 0) throw DomainError("urn count must be positive");
  const long mm = static_cast<long>(m);
  Rational one_away = power_ratio(mm - 1, mm, n);
  Rational two_away = power_ratio(mm - 2, mm, n);
  Rational mean = Rational(mm) * (Rational(1) - one_away);
  Rational variance = Rational(mm) * (one_away - two_away) -
                      Rational(mm * mm) * (one_away * one_away - two_away);
  return {mean, variance};
}

// ---------------------------------------------------------------------------
// Committee occupancy
// ---------------------------------------------------------------------------

Rational committee_pmf(unsigned m, unsigned n, unsigned k, unsigned i) {
  require_batch(m, k);
  if (n == 0) return i == 0 ? 1 : 0;
  if (i < k || i > m || static_cast<unsigned long>(i) > static_cast<unsigned long>(n) * k) {
    return 0;
  }
  // delta^i [C(x, k)^n] at 0.
  BigInt sum = 0;
  for (unsigned j = k; j <= i; ++j) {
    BigInt term = binomial(static_cast<long>(i), j) * pow_ui(binomial(static_cast<long>(j), k), n);
    if ((i - j) % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational(binomial(static_cast<long>(m), i) * sum,
                  pow_ui(binomial(static_cast<long>(m), k), n));
}

Rational committee_moment(unsigned m, unsigned n, unsigned k, unsigned r, MomentKind kind) {
  require_batch(m, k);
  return moment_of(m, r, kind,
                   [&](unsigned order) { return committee_normalized(m, n, k, order); });
}

MeanVariance committee_mean_variance(unsigned m, unsigned n, unsigned k) {
  require_batch(m, k);
  const long mm = static_cast<long>(m);
  Rational mean = Rational(mm) * (Rational(1) - power_ratio(mm - static_cast<long>(k), mm, n));
  // E[X^2] = mu + 2 E[C(X, 2)].
  Rational pairs = committee_moment(m, n, k, 2, MomentKind::Binomial);
  Rational variance = mean + Rational(2) * pairs - mean * mean;
  return {mean, variance};
}

// ---------------------------------------------------------------------------
// Multivariate committees
// ---------------------------------------------------------------------------

Rational union_pmf(const CommitteeSpec& spec, unsigned i) {
  const unsigned m = spec.m();
  if (i > m) return 0;
  auto ks = spec.flattened_sizes();
  unsigned kmax = *std::max_element(ks.begin(), ks.end());
  if (i < kmax || static_cast<unsigned long>(i) > spec.total_balls()) return 0;
  BigInt denom = 1;
  for (unsigned k : ks) denom *= binomial(static_cast<long>(m), k);
  BigInt sum = 0;
  for (unsigned j = kmax; j <= i; ++j) {
    BigInt prod = 1;
    for (unsigned k : ks) prod *= binomial(static_cast<long>(j), k);
    BigInt term = binomial(static_cast<long>(i), j) * prod;
    if ((i - j) % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational(binomial(static_cast<long>(m), i) * sum, denom);
}

Rational union_moment(const CommitteeSpec& spec, unsigned r, MomentKind kind) {
  const unsigned m = spec.m();
  auto ks = spec.flattened_sizes();
  auto normalized = [&](unsigned order) -> Rational {
    if (order == 0) return 1;
    if (order > m) return 0;
    return rho(order, m, ks);
  };
  return moment_of(m, r, kind, normalized);
}

Rational intersection_moment(const CommitteeSpec& spec, unsigned r) {
  const unsigned m = spec.m();
  if (r == 0) return 1;
  if (r > m) return 0;
  const auto& deps = spec.departments();
  if (spec.single_committees()) {
    BigInt num = 1;
    for (const auto& d : deps) num *= binomial(static_cast<long>(d.k), r);
    BigInt den = pow_ui(binomial(static_cast<long>(m), r), deps.size() - 1);
    return Rational(num, den);
  }
  Rational prod(binomial(static_cast<long>(m), r));
  for (const auto& d : deps) prod *= committee_normalized(m, d.n, d.k, r);
  return prod;
}

Rational intersection_pmf(const CommitteeSpec& spec, unsigned i) {
  const unsigned m = spec.m();
  if (i > m) return 0;
  // P(first r urns hit by every color) = prod_d rho_d(r).
  std::vector<Rational> joint(m + 1, Rational(1));
  for (const auto& d : spec.departments()) {
    for (unsigned r = 1; r <= m; ++r) joint[r] *= committee_normalized(m, d.n, d.k, r);
  }
  Rational sum = 0;
  for (unsigned j = 0; j + i <= m; ++j) {
    Rational term = Rational(binomial(static_cast<long>(m - i), j)) * joint[i + j];
    if (j % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational(binomial(static_cast<long>(m), i)) * sum;
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

MomentBounds moment_bounds(unsigned m, unsigned n, unsigned k, unsigned r) {
  require_batch(m, k);
  if (r > std::min(k, m - k)) {
    throw DomainError("moment order r=" + std::to_string(r) + " exceeds min(k, m-k)=" +
                      std::to_string(std::min(k, m - k)));
  }
  const long mm = static_cast<long>(m);
  const unsigned long balls = static_cast<unsigned long>(n) * k;
  Rational lower = nabla_power(mm, static_cast<unsigned>(balls), r) /
                   Rational(pow_ui(BigInt(m), balls));
  Rational mu = Rational(mm) * (Rational(1) - power_ratio(mm - static_cast<long>(k), mm, n));
  Rational jensen = binomial(mu, r) / Rational(binomial(mm, r));
  Rational upper = (mu / Rational(mm)).pow(r);
  return {lower, jensen, upper};
}

Rational raw_from_binomial(const std::vector<Rational>& binomial_moments, unsigned r) {
  if (r == 0) return 1;
  Rational sum = 0;
  for (unsigned i = 1; i <= r && i < binomial_moments.size(); ++i) {
    sum += Rational(stirling2(r, i) * factorial(i)) * binomial_moments[i];
  }
  return sum;
}

}  // namespace occbloom
