#include "occbloom/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "occbloom/errors.hpp"

namespace occbloom {

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& q) {
  Rational r;
  r.q_ = q;
  r.q_.canonicalize();
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational Rational::pow(unsigned long e) const {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), e);
  // Powers of coprime integers stay coprime.
  Rational r;
  r.q_ = mpq_class(num, den);
  return r;
}

double Rational::to_double() const { return q_.get_d(); }

double Rational::log2() const {
  if (sign() <= 0) throw DomainError("log2 of a non-positive rational");
  // Near 1 the two big logarithms cancel; go through log1p instead.
  const mpq_class quarter(1, 4);
  const mpq_class four(4);
  if (q_ > quarter && q_ < four) {
    mpq_class delta = q_ - 1;
    return std::log1p(delta.get_d()) / std::log(2.0);
  }
  return occbloom::log2(q_.get_num()) - occbloom::log2(q_.get_den());
}

std::string Rational::str() const { return q_.get_str(); }

std::string Rational::to_decimal(int digits) const {
  if (digits < 1) digits = 1;
  if (is_zero()) return "0";
  Rational x = sign() < 0 ? -*this : *this;
  long exp10 = static_cast<long>(std::floor(x.log2() * std::log10(2.0)));
  BigInt lo, hi;
  mpz_ui_pow_ui(lo.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
  hi = lo * 10;
  BigInt mant;
  for (int attempt = 0; attempt < 4; ++attempt) {
    long shift = digits - 1 - exp10;
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class scaled = x.value();
    if (shift >= 0) {
      scaled *= mpq_class(p10);
    } else {
      scaled /= mpq_class(p10);
    }
    // Round half up.
    mpq_class shifted = scaled + mpq_class(1, 2);
    mpz_fdiv_q(mant.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    if (mant >= hi) {
      ++exp10;
    } else if (mant < lo) {
      --exp10;
    } else {
      break;
    }
  }
  std::string m = mant.get_str();
  std::string out = sign() < 0 ? "-" : "";
  out += m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "e%+03ld", exp10);
  out += buf;
  return out;
}

double log2(const BigInt& v) {
  if (sgn(v) <= 0) throw DomainError("log2 of a non-positive integer");
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}

// ---------------------------------------------------------------------------
// Memo tables
// ---------------------------------------------------------------------------

namespace {

class StirlingTable {
 public:
  BigInt get(unsigned n, unsigned i) {
    if (i > n) return 0;
    {
      std::shared_lock lock(mu_);
      if (n < rows_.size()) return rows_[n][i];
    }
    std::unique_lock lock(mu_);
    if (rows_.empty()) rows_.push_back({BigInt(1)});
    while (rows_.size() <= n) {
      const auto& prev = rows_.back();
      unsigned row = static_cast<unsigned>(rows_.size());
      std::vector<BigInt> next(row + 1);
      next[0] = 0;
      for (unsigned j = 1; j <= row; ++j) {
        BigInt carry = j < prev.size() ? BigInt(prev[j] * j) : BigInt(0);
        next[j] = carry + prev[j - 1];
      }
      rows_.push_back(std::move(next));
    }
    return rows_[n][i];
  }

 private:
  std::shared_mutex mu_;
  std::vector<std::vector<BigInt>> rows_;
};

class BinomialCache {
 public:
  static constexpr long kMaxCachedTop = 8192;

  BigInt get(long x, unsigned k) {
    if (x >= 0 && static_cast<unsigned long>(x) < k) return 0;
    if (x < 0 || x > kMaxCachedTop) return compute(x, k);
    const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | k;
    {
      std::shared_lock lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    BigInt v = compute(x, k);
    std::unique_lock lock(mu_);
    cache_.emplace(key, v);
    return v;
  }

 private:
  static BigInt compute(long x, unsigned k) {
    BigInt out;
    BigInt top(x);
    mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
    return out;
  }

  std::shared_mutex mu_;
  std::unordered_map<std::uint64_t, BigInt> cache_;
};

StirlingTable& stirling_table() {
  static StirlingTable table;
  return table;
}

BinomialCache& binomial_cache() {
  static BinomialCache cache;
  return cache;
}

BigInt signed_pow(long base, unsigned long e) {
  BigInt out;
  BigInt b(base);
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

// Distinct committee sizes with their multiplicities.
std::map<unsigned, unsigned long> group_sizes(std::span<const unsigned> ks) {
  std::map<unsigned, unsigned long> groups;
  for (unsigned k : ks) ++groups[k];
  return groups;
}

BigInt binom_product(long x, const std::map<unsigned, unsigned long>& groups) {
  BigInt prod = 1;
  for (const auto& [k, count] : groups) {
    BigInt c = binomial(x, k);
    if (c == 0) return 0;
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), c.get_mpz_t(), count);
    prod *= p;
  }
  return prod;
}

void require_committee(long s, std::span<const unsigned> ks) {
  if (ks.empty()) throw DomainError("committee size list must be non-empty");
  unsigned kmax = *std::max_element(ks.begin(), ks.end());
  if (s < static_cast<long>(kmax)) {
    throw DomainError("evaluation point " + std::to_string(s) +
                      " is below the largest committee size " + std::to_string(kmax));
  }
}

}  // namespace

BigInt stirling2(unsigned n, unsigned i) { return stirling_table().get(n, i); }

BigInt binomial(long x, unsigned k) { return binomial_cache().get(x, k); }

BigInt factorial(unsigned r) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), r);
  return out;
}

BigInt falling_factorial(long x, unsigned r) {
  BigInt out = 1;
  for (unsigned j = 0; j < r; ++j) {
    out *= BigInt(x - static_cast<long>(j));
    if (out == 0) break;
  }
  return out;
}

Rational falling_factorial(const Rational& x, unsigned r) {
  mpq_class out = 1;
  for (unsigned j = 0; j < r; ++j) out *= x.value() - j;
  return Rational::from_mpq(out);
}

Rational binomial(const Rational& x, unsigned r) {
  return falling_factorial(x, r) / Rational(factorial(r));
}

Rational difference(DifferenceKind kind, const std::function<Rational(long)>& f, long at,
                    unsigned order) {
  Rational sum = 0;
  for (unsigned j = 0; j <= order; ++j) {
    Rational c(binomial(static_cast<long>(order), j));
    bool negative;
    Rational value;
    if (kind == DifferenceKind::Backward) {
      negative = (j % 2) == 1;
      value = f(at - static_cast<long>(j));
    } else {
      negative = ((order - j) % 2) == 1;
      value = f(at + static_cast<long>(j));
    }
    if (negative) {
      sum -= c * value;
    } else {
      sum += c * value;
    }
  }
  return sum;
}

std::vector<BigInt> backward_differences(std::vector<BigInt> values) {
  // After pass i, values[j] holds nabla^i f(a - j) for j < L - i; values[0]
  // is recorded before each pass.
  const std::size_t len = values.size();
  std::vector<BigInt> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = values[0];
    for (std::size_t j = 0; j + 1 < len - i; ++j) values[j] -= values[j + 1];
  }
  return out;
}

std::vector<BigInt> forward_differences(std::vector<BigInt> values) {
  const std::size_t len = values.size();
  std::vector<BigInt> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = values[0];
    for (std::size_t j = 0; j + 1 < len - i; ++j) values[j] = values[j + 1] - values[j];
  }
  return out;
}

Rational nabla_power(long m, unsigned n, unsigned r) {
  if (r > n) return 0;
  BigInt sum = 0;
  for (unsigned j = 0; j <= r; ++j) {
    BigInt term = binomial(static_cast<long>(r), j) * signed_pow(m - static_cast<long>(j), n);
    if (j % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational(sum);
}

Rational nabla_power(const Rational& at, unsigned n, unsigned r) {
  if (r > n) return 0;
  mpq_class sum = 0;
  for (unsigned j = 0; j <= r; ++j) {
    Rational base = at - Rational(static_cast<long>(j));
    mpq_class term = mpq_class(binomial(static_cast<long>(r), j)) * base.pow(n).value();
    if (j % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational::from_mpq(sum);
}

Rational nabla_binom_product(long m, std::span<const unsigned> ks, unsigned r) {
  require_committee(m, ks);
  unsigned long degree = 0;
  for (unsigned k : ks) degree += k;
  if (r > degree) return 0;
  auto groups = group_sizes(ks);
  BigInt sum = 0;
  for (unsigned j = 0; j <= r; ++j) {
    BigInt value = binom_product(m - static_cast<long>(j), groups);
    if (value == 0) continue;
    BigInt term = binomial(static_cast<long>(r), j) * value;
    if (j % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return Rational(sum);
}

Rational rho(unsigned r, long s, std::span<const unsigned> ks) {
  require_committee(s, ks);
  if (r == 0) return 1;
  return nabla_binom_product(s, ks, r) / Rational(binom_product(s, group_sizes(ks)));
}

Rational rho_recursive(unsigned r, long s, std::span<const unsigned> ks) {
  require_committee(s, ks);
  const long kmax = *std::max_element(ks.begin(), ks.end());
  auto groups = group_sizes(ks);
  auto weight = [&](long at) {
    mpq_class w = 1;
    for (const auto& [k, count] : groups) {
      mpq_class base(at - static_cast<long>(k), at);
      Rational p = Rational::from_mpq(base).pow(count);
      w *= p.value();
    }
    return w;
  };

  // level[s' - lo] = rho(a, s') for s' in [lo, s]. Nodes below kmax only feed
  // the zero weight at s' = kmax, so they stay as placeholders.
  const long lo = s - static_cast<long>(r);
  std::vector<mpq_class> level(static_cast<std::size_t>(r) + 1, mpq_class(1));
  std::vector<mpq_class> weights(level.size(), mpq_class(0));
  for (long at = std::max(lo, kmax); at <= s; ++at) {
    weights[static_cast<std::size_t>(at - lo)] = weight(at);
  }
  for (unsigned a = 1; a <= r; ++a) {
    for (long at = s; at >= lo + static_cast<long>(a); --at) {
      std::size_t idx = static_cast<std::size_t>(at - lo);
      if (at < kmax) {
        level[idx] = 0;
        continue;
      }
      const mpq_class& w = weights[idx];
      if (sgn(w) != 0) level[idx] -= w * level[idx - 1];
    }
  }
  return Rational::from_mpq(level.back());
}

}  // namespace occbloom
