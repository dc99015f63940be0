#include "occbloom/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <math.h>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "occbloom/errors.hpp"

namespace occbloom {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

Quad ipow(Quad base, unsigned long e) {
  Quad out = 1;
  for (; e != 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Rational ratio(long num, long den) { return Rational(BigInt(num), BigInt(den)); }

// 1 - ((m - j) / m)^e
Rational complement_power(unsigned m, unsigned j, unsigned long e) {
  return Rational(1) - ratio(static_cast<long>(m) - static_cast<long>(j), m).pow(e);
}

void require_standard(unsigned m, unsigned k) {
  if (m == 0) throw DomainError("filter length m must be positive");
  if (k == 0) throw DomainError("hash bit count k must be positive");
}

void require_classic(unsigned m, unsigned k) {
  require_standard(m, k);
  if (k > m) {
    throw DomainError("classic filters need k <= m (k=" + std::to_string(k) +
                      ", m=" + std::to_string(m) + ")");
  }
}

double lgamma_safe(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// log2 of a Jensen lower bound on the FPR: (mu/m)^k for standard filters,
// C(mu, k) / C(m, k) for classic ones (C(x, k) is convex for x >= k - 1 and
// the committee occupancy never drops below k).
double fpr_lower_bound_log2(FilterVariant variant, unsigned m, unsigned n, unsigned k) {
  const double dm = m;
  if (variant == FilterVariant::Standard) {
    const double fill = -std::expm1(static_cast<double>(n) * k * std::log1p(-1.0 / dm));
    return k * std::log2(fill);
  }
  const double mu = -dm * std::expm1(n * std::log1p(-static_cast<double>(k) / dm));
  const double top = std::max(mu, static_cast<double>(k));
  const double log_ratio = lgamma_safe(top + 1) - lgamma_safe(top - k + 1) -
                           lgamma_safe(dm + 1) + lgamma_safe(dm - k + 1);
  return log_ratio / std::log(2.0);
}

}  // namespace

Rational fpr_standard_exact(unsigned m, unsigned n, unsigned k) {
  require_standard(m, k);
  if (n == 0) return 0;
  if (m == 1) return 1;
  const unsigned long balls = static_cast<unsigned long>(n) * k;
  if (k == 1) return complement_power(m, 1, n);

  // S(k, i) m^(i) = C(m, i) delta^i [x^k] at 0, so both factors come out of
  // difference tables of length min(k, m) + 1.
  const unsigned top = std::min(k, m);
  std::vector<BigInt> powers(top + 1);
  std::vector<BigInt> shifted(top + 1);
  for (unsigned j = 0; j <= top; ++j) {
    powers[j] = pow_ui(BigInt(j), k);
    shifted[j] = pow_ui(BigInt(m - j), balls);
  }
  const auto forward = forward_differences(std::move(powers));
  const auto backward = backward_differences(std::move(shifted));
  BigInt sum = 0;
  for (unsigned i = 1; i <= top && i <= balls; ++i) {
    sum += forward[i] * binomial(static_cast<long>(m), i) * backward[i];
  }
  return Rational(sum, pow_ui(BigInt(m), balls + k));
}

Rational fpr_classic_exact(unsigned m, unsigned n, unsigned k) {
  require_classic(m, k);
  if (n == 0) return 0;
  if (k == m) return 1;
  if (n == 1) return Rational(BigInt(1), binomial(static_cast<long>(m), k));
  if (k == 1) return complement_power(m, 1, n);
  std::vector<unsigned> sizes(n, k);
  return rho(k, m, sizes);
}

Rational fpr_exact(FilterVariant variant, unsigned m, unsigned n, unsigned k) {
  return variant == FilterVariant::Classic ? fpr_classic_exact(m, n, k)
                                           : fpr_standard_exact(m, n, k);
}

double fpr_recursive(FilterVariant variant, unsigned m, unsigned n, unsigned k) {
  if (variant == FilterVariant::Classic) {
    require_classic(m, k);
  } else {
    require_standard(m, k);
  }
  if (n == 0) return 0.0;

  // level[s - lo] holds psi(h, s). Each step needs psi(h - 1, s - 1), so the
  // sweep runs downward in s. The alternating corrections cancel heavily once
  // the result drops below ~1e-10, hence the 113-bit arithmetic.
  const long lo = std::max(0L, static_cast<long>(m) - static_cast<long>(k));
  std::vector<Quad> level(m - lo + 1, Quad(1));

  // weight[s - lo]: (1 - k/s)^n for classic filters, zero once s <= k; for
  // standard ones (1 - 1/s)^{nk + h - 1}, advanced by one factor per level.
  std::vector<Quad> weight(m - lo + 1, Quad(0));
  std::vector<Quad> step(m - lo + 1, Quad(1));
  for (long s = std::max(lo, 1L); s <= static_cast<long>(m); ++s) {
    if (variant == FilterVariant::Standard) {
      step[s - lo] = Quad(1) - Quad(1) / s;
      weight[s - lo] = ipow(step[s - lo], static_cast<unsigned long>(n) * k);
    } else if (s > static_cast<long>(k)) {
      weight[s - lo] = ipow(Quad(1) - Quad(k) / s, n);
    }
  }

  for (unsigned h = 1; h <= k; ++h) {
    const long floor_s = std::max(lo + static_cast<long>(h), 1L);
    for (long s = m; s >= floor_s; --s) {
      const Quad& w = weight[s - lo];
      if (w != 0) level[s - lo] -= w * level[s - 1 - lo];
    }
    if (variant == FilterVariant::Standard) {
      for (std::size_t i = 0; i < weight.size(); ++i) weight[i] *= step[i];
    }
  }
  return level[m - lo].convert_to<double>();
}

Rational fpr_middle_exact(unsigned m, unsigned n, unsigned k) {
  require_standard(m, k);
  return complement_power(m, 1, static_cast<unsigned long>(k) * n).pow(k);
}

FprBounds fpr_bounds(unsigned m, unsigned n, unsigned k) {
  require_standard(m, k);
  FprBounds b;
  b.ordered = 2UL * k + 1 <= m;
  if (n == 0) {
    b.L = 0;
    b.U = 0;
    return b;
  }
  const double dm = m;
  const double kn = static_cast<double>(k) * n;
  b.E = std::pow(-std::expm1(-kn / dm), k);
  b.M = m == 1 ? 1.0 : std::pow(-std::expm1(kn * std::log1p(-1.0 / dm)), k);
  const unsigned long balls = static_cast<unsigned long>(n) * k;
  b.L = k > balls ? Rational(0)
                  : nabla_power(static_cast<long>(m), static_cast<unsigned>(balls), k) /
                        Rational(pow_ui(BigInt(m), balls));
  if (k >= m) {
    b.U = 1;
  } else {
    b.U = complement_power(m, k, n).pow(k);
  }
  return b;
}

double fpr_taylor(unsigned m, unsigned n, unsigned k) {
  require_standard(m, k);
  if (n == 0) return 0.0;
  const MeanVariance mv = classic_mean_variance(m, static_cast<unsigned long>(n) * k);
  const double mu = mv.mean.to_double();
  const double var = mv.variance.to_double();
  const double base = std::pow(mu / m, k);
  return base * (1.0 + var * k * (k - 1.0) / (2.0 * mu * mu));
}

FprReport analyze(FilterVariant variant, unsigned m, unsigned n, unsigned k) {
  FprReport r;
  r.variant = variant;
  r.m = m;
  r.n = n;
  r.k = k;
  r.exact = fpr_exact(variant, m, n, k);
  r.bounds = fpr_bounds(m, n, k);
  r.taylor = fpr_taylor(m, n, k);
  if (r.exact.is_zero()) {
    r.log2_exact = -std::numeric_limits<double>::infinity();
  } else {
    r.log2_exact = r.exact.log2();
    r.has_efficiency = true;
    r.efficiency = n == 0 ? 0.0 : -static_cast<double>(n) / m * r.log2_exact;
  }
  return r;
}

namespace {

void consider(OptimalK& best, bool& found, FilterVariant variant, unsigned m, unsigned n,
              unsigned k) {
  Rational f = fpr_exact(variant, m, n, k);
  if (!found || f < best.fpr) {
    best.fpr = std::move(f);
    best.log2_fpr = best.fpr.log2();
    best.k = best.k_last = k;
    found = true;
  } else if (f == best.fpr) {
    best.k = std::min(best.k, k);
    best.k_last = std::max(best.k_last, k);
  }
}

double screen_tolerance(double log2_value) { return 1e-6 * std::max(1.0, std::abs(log2_value)); }

// Standard filters: the Jensen bound is loose when few items are stored, so
// candidates are screened with a floating-point evaluation of
// f_S = E[(X/m)^k], X the occupancy of nk balls. Every term of that sum is
// positive, so its relative error stays near machine precision; only k
// within a small tolerance of the screened minimum get an exact evaluation.
OptimalK optimal_k_standard(unsigned m, unsigned n) {
  std::vector<double> bound(m + 2, std::numeric_limits<double>::infinity());
  for (unsigned k = m; k >= 1; --k) {
    bound[k] = std::min(bound[k + 1], fpr_lower_bound_log2(FilterVariant::Standard, m, n, k));
  }

  // occupancy[x] = P(X = x) after `balls` casts.
  std::vector<long double> occupancy(m + 1, 0.0L);
  occupancy[0] = 1.0L;
  unsigned long balls = 0;
  const long double lm = m;
  std::vector<long double> screened(m + 1, std::numeric_limits<long double>::infinity());
  long double best_screen = std::numeric_limits<long double>::infinity();
  for (unsigned k = 1; k <= m; ++k) {
    if (std::isfinite(static_cast<double>(best_screen)) &&
        bound[k] > static_cast<double>(best_screen) + screen_tolerance(best_screen)) {
      break;
    }
    for (; balls < static_cast<unsigned long>(n) * k; ++balls) {
      const unsigned reach = static_cast<unsigned>(std::min<unsigned long>(balls + 1, m));
      for (unsigned x = reach; x >= 1; --x) {
        occupancy[x] = occupancy[x] * (x / lm) + occupancy[x - 1] * ((m - x + 1) / lm);
      }
      occupancy[0] = 0.0L;
    }
    long double sum = 0.0L;
    const unsigned reach = static_cast<unsigned>(std::min<unsigned long>(balls, m));
    for (unsigned x = 1; x <= reach; ++x) {
      if (occupancy[x] != 0.0L) sum += occupancy[x] * std::pow(x / lm, static_cast<long double>(k));
    }
    screened[k] = std::log2(sum);
    best_screen = std::min(best_screen, screened[k]);
  }

  OptimalK best;
  bool found = false;
  const long double cutoff = best_screen + screen_tolerance(static_cast<double>(best_screen));
  for (unsigned k = 1; k <= m; ++k) {
    if (screened[k] <= cutoff) consider(best, found, FilterVariant::Standard, m, n, k);
  }
  return best;
}

}  // namespace

OptimalK optimal_k_exact(FilterVariant variant, unsigned m, unsigned n) {
  if (m == 0) throw DomainError("filter length m must be positive");
  if (n == 0) return {1, m, Rational(0), -std::numeric_limits<double>::infinity()};
  if (variant == FilterVariant::Standard && m > 1) return optimal_k_standard(m, n);

  // Branch and bound: visit k in order of a cheap lower bound and stop once
  // the bound exceeds the best exact value found so far.
  std::vector<std::pair<double, unsigned>> order;
  order.reserve(m);
  for (unsigned k = 1; k <= m; ++k) {
    order.emplace_back(fpr_lower_bound_log2(variant, m, n, k), k);
  }
  std::sort(order.begin(), order.end());

  OptimalK best;
  bool found = false;
  for (const auto& [bound, k] : order) {
    if (found && bound > best.log2_fpr + 1e-9 * std::max(1.0, std::abs(best.log2_fpr))) break;
    consider(best, found, variant, m, n, k);
  }
  return best;
}

double optimal_k_estimate(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw DomainError("optimal_k_estimate requires m, n >= 1");
  return static_cast<double>(m) / n * std::log(2.0);
}

namespace {

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("target false-positive rate must lie strictly between 0 and 1");
  }
}

bool meets(FilterVariant variant, unsigned m, unsigned n, double log2_target) {
  // Compare in the log domain: targets can sit below double underflow only
  // through log2 p, and p itself is a double, so this is exact enough.
  const OptimalK best = optimal_k_exact(variant, m, n);
  return best.log2_fpr <= log2_target;
}

}  // namespace

double capacity_n_estimate(unsigned m, double p) {
  require_probability(p);
  return -static_cast<double>(m) * std::log(2.0) / std::log2(p);
}

double size_m_estimate(unsigned n, double p) {
  require_probability(p);
  return -static_cast<double>(n) * std::log2(p) / std::log(2.0);
}

unsigned capacity_n_max(FilterVariant variant, unsigned m, double p) {
  require_probability(p);
  if (m == 0) throw DomainError("filter length m must be positive");
  const double target = std::log2(p);
  if (!meets(variant, m, 1, target)) {
    throw InfeasibleError("a single item already exceeds the target false-positive rate");
  }
  // Gallop from the closed-form seed to bracket the boundary, then bisect.
  unsigned seed = static_cast<unsigned>(std::max(1.0, std::round(capacity_n_estimate(m, p))));
  unsigned good = 1;
  unsigned bad = 0;  // 0: no failing n known yet
  if (meets(variant, m, seed, target)) {
    good = seed;
    for (unsigned step = 1;; step *= 2) {
      const unsigned probe = good + step;
      if (meets(variant, m, probe, target)) {
        good = probe;
      } else {
        bad = probe;
        break;
      }
    }
  } else {
    bad = seed;
    for (unsigned step = 1;; step *= 2) {
      const unsigned probe = bad > step ? bad - step : 1;
      if (meets(variant, m, probe, target)) {
        good = probe;
        break;
      }
      bad = probe;
    }
  }
  while (bad - good > 1) {
    const unsigned mid = good + (bad - good) / 2;
    if (meets(variant, m, mid, target)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

unsigned size_m_min(FilterVariant variant, unsigned n, double p, unsigned m_limit) {
  require_probability(p);
  if (n == 0) throw DomainError("size_m_min requires n >= 1");
  const double target = std::log2(p);
  unsigned seed = static_cast<unsigned>(std::max(1.0, std::ceil(size_m_estimate(n, p))));
  seed = std::min(seed, m_limit);
  unsigned good = 0;  // smallest m known to meet p (0: none yet)
  unsigned bad = 0;   // largest m known to miss p
  if (meets(variant, seed, n, target)) {
    good = seed;
    for (unsigned step = 1;; step *= 2) {
      if (good <= 1) break;
      const unsigned probe = good > step ? good - step : 1;
      if (meets(variant, probe, n, target)) {
        good = probe;
        if (probe == 1) break;
      } else {
        bad = probe;
        break;
      }
    }
  } else {
    bad = seed;
    for (unsigned step = 1;; step *= 2) {
      if (bad >= m_limit) {
        throw InfeasibleError("no filter of at most " + std::to_string(m_limit) +
                              " bits reaches the target");
      }
      const unsigned probe = std::min(m_limit, bad + step);
      if (meets(variant, probe, n, target)) {
        good = probe;
        break;
      }
      bad = probe;
    }
  }
  while (good - bad > 1 && bad != 0) {
    const unsigned mid = bad + (good - bad) / 2;
    if (meets(variant, mid, n, target)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

double efficiency(FilterVariant variant, unsigned m, unsigned n, unsigned k) {
  const Rational f = fpr_exact(variant, m, n, k);
  if (f.is_zero()) throw UndefinedEfficiency("efficiency is undefined at a zero false-positive rate");
  return -static_cast<double>(n) / m * f.log2();
}

EfficiencyPoint peak_efficiency(FilterVariant variant, unsigned m, unsigned k) {
  if (variant == FilterVariant::Classic) {
    require_classic(m, k);
  } else {
    require_standard(m, k);
  }
  auto eps = [&](unsigned n) { return efficiency(variant, m, n, k); };

  const double seed_real = (static_cast<double>(m) / k - 1.0) * std::log(2.0);
  unsigned n = static_cast<unsigned>(std::max(1.0, std::round(seed_real)));
  double here = eps(n);
  // Climb to a local maximum; ties keep the smaller n.
  for (;;) {
    if (n > 1) {
      const double left = eps(n - 1);
      if (left >= here) {
        --n;
        here = left;
        continue;
      }
    }
    const double right = eps(n + 1);
    if (right > here) {
      ++n;
      here = right;
      continue;
    }
    break;
  }

  // A few probes past the neighbours guard against a shallow second hump.
  bool unimodal = true;
  for (unsigned d = 2; d <= 4 && unimodal; ++d) {
    if (eps(n + d) > here) unimodal = false;
    if (n > d && eps(n - d) >= here) unimodal = false;
  }
  if (!unimodal) {
    const unsigned limit = static_cast<unsigned>(
        std::ceil(4.0 * m * std::log(2.0) / k)) + 1;
    n = 1;
    here = eps(1);
    for (unsigned cand = 2; cand <= limit; ++cand) {
      const double e = eps(cand);
      if (e > here) {
        here = e;
        n = cand;
      }
    }
  }
  return {n, k, here, false};
}

EfficiencyPoint max_efficiency(FilterVariant variant, unsigned m) {
  if (m < 2) throw DomainError("maximum efficiency needs m >= 2");
  if (variant == FilterVariant::Standard) {
    const double per_item = std::log2(static_cast<double>(m) / (m - 1.0));
    const auto n = static_cast<unsigned>(std::lround(1.0 / per_item));
    return {n, 1, 1.0 / (m * per_item), false};
  }
  const unsigned k = m / 2;
  const double eps = log2(binomial(static_cast<long>(m), k)) / m;
  return {1, k, eps, true};
}

double valley_crossing(unsigned k) {
  if (k == 0) throw DomainError("valley_crossing requires k >= 1");
  const long double inv = 1.0L / (k + 1);
  long double z = 1.0L;
  for (int iter = 0; iter < 10000; ++iter) {
    const long double next = std::pow(1.0L + z, inv);
    const long double step = std::fabs(next - z);
    z = next;
    if (step < 1e-15L) break;
  }
  return static_cast<double>(std::log(z));
}

MeanVariance intersection_filter_moments(unsigned m, unsigned k,
                                         const std::vector<unsigned>& counts) {
  require_standard(m, k);
  if (counts.empty()) throw DomainError("intersection needs at least one filter");
  if (std::any_of(counts.begin(), counts.end(), [](unsigned c) { return c == 0; })) {
    return {Rational(0), Rational(0)};
  }
  Rational mean(static_cast<long>(m));
  std::vector<Department> departments;
  for (unsigned c : counts) {
    mean *= complement_power(m, 1, static_cast<unsigned long>(c) * k);
    departments.push_back({c * k, 1});
  }
  const CommitteeSpec spec(m, std::move(departments));
  const Rational pairs = intersection_moment(spec, 2);
  return {mean, mean + Rational(2) * pairs - mean * mean};
}

}  // namespace occbloom
