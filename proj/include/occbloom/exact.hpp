#pragma once

// Exact combinatorial kernel: arbitrary-precision rationals, Stirling and
// binomial tables, and the finite-difference operators that the occupancy
// and false-positive formulas are assembled from.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace occbloom {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always held in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}           // NOLINT(google-explicit-constructor)
  Rational(unsigned v) : q_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(unsigned long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  /// Throws DomainError when den == 0.
  Rational(const BigInt& num, const BigInt& den);

  static Rational from_mpq(const mpq_class& q);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& value() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  /// Throws DomainError on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational pow(unsigned long e) const;

  /// Nearest double; underflows to 0 below ~1e-308.
  double to_double() const;
  /// log2 of a positive value, accurate for magnitudes far outside double range.
  double log2() const;
  /// "p/q" (or "p" for integers).
  std::string str() const;
  /// Decimal in scientific notation rounded to `digits` significant figures.
  std::string to_decimal(int digits) const;

 private:
  mpq_class q_;
};

/// log2 of a positive integer, valid for any bit length.
double log2(const BigInt& v);

/// Stirling number of the second kind S(n, i); memoized.
BigInt stirling2(unsigned n, unsigned i);

/// Binomial coefficient C(x, k) read as a polynomial in x, so C(x, k) = 0 for
/// 0 <= x < k and negative x follows the polynomial extension. Memoized for
/// moderate non-negative x.
BigInt binomial(long x, unsigned k);

/// x(x-1)...(x-r+1); 1 when r = 0.
BigInt falling_factorial(long x, unsigned r);
Rational falling_factorial(const Rational& x, unsigned r);

/// Generalized binomial falling_factorial(x, r) / r!.
Rational binomial(const Rational& x, unsigned r);

BigInt factorial(unsigned r);

enum class DifferenceKind { Backward, Forward };

/// r-th backward (f(x) - f(x-1)) or forward (f(x+1) - f(x)) difference of f
/// evaluated at `at`, accumulated exactly before any division.
Rational difference(DifferenceKind kind, const std::function<Rational(long)>& f,
                    long at, unsigned order);

/// Given values[j] = f(a - j) for j = 0..L-1, returns d[i] = nabla^i f(a) for
/// i = 0..L-1 using an in-place difference table (O(L^2) subtractions).
std::vector<BigInt> backward_differences(std::vector<BigInt> values);

/// Given values[j] = f(a + j), returns d[i] = delta^i f(a).
std::vector<BigInt> forward_differences(std::vector<BigInt> values);

/// nabla^r [x^n] at x = m, i.e. sum_j (-1)^j C(r, j) (m - j)^n.
Rational nabla_power(long m, unsigned n, unsigned r);
/// Same difference evaluated at a rational point.
Rational nabla_power(const Rational& at, unsigned n, unsigned r);

/// nabla^r [prod_d C(x, k_d)] at x = m. A committee power C(x, k)^n is passed
/// as n repetitions of k. Requires m >= max(ks).
Rational nabla_binom_product(long m, std::span<const unsigned> ks, unsigned r);

/// Normalized difference nabla_binom_product(s, ks, r) / prod_d C(s, k_d),
/// evaluated as a direct alternating sum. Requires non-empty ks and
/// s >= max(ks).
Rational rho(unsigned r, long s, std::span<const unsigned> ks);

/// The same quantity evaluated through the two-term recursion
/// rho(r, s) = rho(r-1, s) - prod_d (1 - k_d/s) rho(r-1, s-1), rho(0, s) = 1.
Rational rho_recursive(unsigned r, long s, std::span<const unsigned> ks);

}  // namespace occbloom
