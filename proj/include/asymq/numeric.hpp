#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace asymq {

using BigInt = mpz_class;

enum class LogBase { e, two };

// Converts a natural-log quantity to the requested base.
double in_base(double nats, LogBase base);
const char* to_string(LogBase base);

// Exact rational, always in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q);

  static BigRational from_double(double v);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  double to_double() const;
  // Natural log of a strictly positive value; finite even when to_double()
  // would underflow.
  double log() const;
  // Always "num/den", also for integers.
  std::string to_string() const;

  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

// log |x| with a sign tag, for quantities whose magnitude overflows a double.
struct LogValue {
  enum class Sign { negative = -1, zero = 0, positive = 1 };

  double log_abs = 0.0;
  Sign sign = Sign::zero;

  static LogValue from_double(double x);
  static LogValue from_log(double log_abs, Sign sign = Sign::positive);
  double to_double() const;
};

// Natural log of a positive big integer.
double log_of(const BigInt& v);

// C(n, r); zero outside 0 <= r <= n.
BigInt binomial_exact(long n, long r);
BigInt factorial_exact(long n);

// n above which log_binomial switches from the exact big-integer path to
// log-gamma.
inline constexpr long kLogBinomialExactThreshold = 300;

// log C(n, r), throws DomainError for r < 0 or r > n.
double log_binomial(long n, long r, LogBase base = LogBase::e);
double log_binomial_exact_path(long n, long r);
double log_binomial_lgamma_path(long n, long r);

// h(t), h'(t) = log((1-t)/t), h''(t) = -1/(t(1-t)) in the given base.
double binary_entropy_family(double t, int order, LogBase base = LogBase::e);
inline double binary_entropy(double t, LogBase base = LogBase::e) {
  return binary_entropy_family(t, 0, base);
}

double gaussian_cdf(double t);
double gaussian_quantile(double p);

}  // namespace asymq
