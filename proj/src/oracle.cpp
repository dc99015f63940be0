#include "occbloom/oracle.hpp"

#include <bit>
#include <map>

#include "occbloom/errors.hpp"

namespace occbloom::oracle {

namespace {

constexpr unsigned kMaxUrns = 16;

void require_small(unsigned m) {
  if (m == 0 || m > kMaxUrns) throw DomainError("oracle enumeration needs 1 <= m <= 16");
}

// Every k-subset of [0, m) as a bitmask.
std::vector<std::uint32_t> subsets(unsigned m, unsigned k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) == k) out.push_back(mask);
  }
  return out;
}

// Applies `steps` rounds of "OR in one of these equally likely masks".
MaskTally cast(unsigned m, unsigned steps, const std::vector<std::uint32_t>& choices) {
  MaskTally t;
  t.m = m;
  t.weight.assign(std::size_t{1} << m, 0);
  t.weight[0] = 1;
  for (unsigned s = 0; s < steps; ++s) {
    std::vector<BigInt> next(t.weight.size(), 0);
    for (std::size_t mask = 0; mask < t.weight.size(); ++mask) {
      if (t.weight[mask] == 0) continue;
      for (std::uint32_t c : choices) next[mask | c] += t.weight[mask];
    }
    t.weight = std::move(next);
  }
  t.total = 0;
  for (const auto& w : t.weight) t.total += w;
  return t;
}

}  // namespace

MaskTally single_balls(unsigned m, unsigned balls) {
  require_small(m);
  return cast(m, balls, subsets(m, 1));
}

MaskTally batches(unsigned m, unsigned n, unsigned k) {
  require_small(m);
  if (k > m) throw DomainError("batch larger than the urn count");
  return cast(m, n, subsets(m, k));
}

std::vector<Rational> occupancy_pmf(const MaskTally& tally) {
  std::vector<BigInt> counts(tally.m + 1, 0);
  for (std::size_t mask = 0; mask < tally.weight.size(); ++mask) {
    counts[std::popcount(mask)] += tally.weight[mask];
  }
  std::vector<Rational> pmf;
  for (const auto& c : counts) pmf.emplace_back(c, tally.total);
  return pmf;
}

Rational raw_moment(const MaskTally& tally, unsigned r) {
  BigInt sum = 0;
  for (std::size_t mask = 0; mask < tally.weight.size(); ++mask) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(std::popcount(mask)), r);
    sum += tally.weight[mask] * p;
  }
  return Rational(sum, tally.total);
}

Rational standard_probe_rate(const MaskTally& tally, unsigned k) {
  // Enumerate every probe sequence of k positions against every mask.
  const unsigned m = tally.m;
  BigInt hits = 0;
  BigInt probes = 0;
  std::vector<unsigned> digits(k, 0);
  for (;;) {
    std::uint32_t need = 0;
    for (unsigned d : digits) need |= 1U << d;
    for (std::size_t mask = 0; mask < tally.weight.size(); ++mask) {
      if ((mask & need) == need) hits += tally.weight[mask];
    }
    probes += 1;
    unsigned pos = 0;
    while (pos < k && ++digits[pos] == m) digits[pos++] = 0;
    if (pos == k) break;
  }
  return Rational(hits, probes * tally.total);
}

Rational classic_probe_rate(const MaskTally& tally, unsigned k) {
  const auto probes = subsets(tally.m, k);
  BigInt hits = 0;
  for (std::uint32_t need : probes) {
    for (std::size_t mask = 0; mask < tally.weight.size(); ++mask) {
      if ((mask & need) == need) hits += tally.weight[mask];
    }
  }
  return Rational(hits, BigInt(static_cast<unsigned long>(probes.size())) * tally.total);
}

Rational standard_fpr(unsigned m, unsigned n, unsigned k) {
  return standard_probe_rate(single_balls(m, n * k), k);
}

Rational classic_fpr(unsigned m, unsigned n, unsigned k) {
  return classic_probe_rate(batches(m, n, k), k);
}

ColoredPmf colored(unsigned m, const std::vector<Department>& departments) {
  require_small(m);
  if (departments.empty()) throw DomainError("need at least one department");
  // Joint weight of (union mask, intersection mask) after each department.
  std::map<std::pair<std::uint32_t, std::uint32_t>, BigInt> joint;
  BigInt total = 1;
  bool first = true;
  for (const auto& d : departments) {
    const MaskTally t = batches(m, d.n, d.k);
    total *= t.total;
    std::map<std::pair<std::uint32_t, std::uint32_t>, BigInt> next;
    for (std::uint32_t mask = 0; mask < t.weight.size(); ++mask) {
      if (t.weight[mask] == 0) continue;
      if (first) {
        next[{mask, mask}] += t.weight[mask];
        continue;
      }
      for (const auto& [key, w] : joint) {
        next[{key.first | mask, key.second & mask}] += w * t.weight[mask];
      }
    }
    joint = std::move(next);
    first = false;
  }
  std::vector<BigInt> u(m + 1, 0);
  std::vector<BigInt> x(m + 1, 0);
  for (const auto& [key, w] : joint) {
    u[std::popcount(key.first)] += w;
    x[std::popcount(key.second)] += w;
  }
  ColoredPmf out;
  for (unsigned i = 0; i <= m; ++i) {
    out.union_pmf.emplace_back(u[i], total);
    out.intersection_pmf.emplace_back(x[i], total);
  }
  return out;
}

Rational mean_of(const std::vector<Rational>& pmf) {
  Rational s = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) s += Rational(static_cast<unsigned long>(i)) * pmf[i];
  return s;
}

Rational variance_of(const std::vector<Rational>& pmf) {
  Rational second = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    second += Rational(static_cast<unsigned long>(i * i)) * pmf[i];
  }
  const Rational mu = mean_of(pmf);
  return second - mu * mu;
}

}  // namespace occbloom::oracle
