#include "asymq/numeric.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "asymq/errors.hpp"

namespace asymq {

double in_base(double nats, LogBase base) {
  return base == LogBase::two ? nats / std::numbers::ln2 : nats;
}

const char* to_string(LogBase base) { return base == LogBase::two ? "2" : "e"; }

BigRational::BigRational(long value) : value_(value) {}

BigRational::BigRational(const BigInt& num, const BigInt& den) : value_(num, den) {
  if (den == 0) throw DomainError("BigRational: zero denominator");
  value_.canonicalize();
}

BigRational::BigRational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

BigRational BigRational::from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("BigRational::from_double: non-finite value");
  return BigRational(mpq_class(v));
}

double BigRational::to_double() const { return value_.get_d(); }

double BigRational::log() const {
  if (sign() <= 0) throw DomainError("BigRational::log: value must be positive");
  return log_of(value_.get_num()) - log_of(value_.get_den());
}

std::string BigRational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRational& BigRational::operator+=(const BigRational& o) {
  value_ += o.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  value_ -= o.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  value_ *= o.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("BigRational: division by zero");
  value_ /= o.value_;
  return *this;
}

LogValue LogValue::from_double(double x) {
  if (x == 0.0) return {-std::numeric_limits<double>::infinity(), Sign::zero};
  return {std::log(std::fabs(x)), x < 0 ? Sign::negative : Sign::positive};
}

LogValue LogValue::from_log(double log_abs, Sign sign) { return {log_abs, sign}; }

double LogValue::to_double() const {
  if (sign == Sign::zero) return 0.0;
  double mag = std::exp(log_abs);
  return sign == Sign::negative ? -mag : mag;
}

double log_of(const BigInt& v) {
  if (sgn(v) <= 0) throw DomainError("log_of: value must be positive");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

BigInt binomial_exact(long n, long r) {
  if (n < 0) throw DomainError("binomial_exact: n must be non-negative");
  BigInt out = 0;
  if (r < 0 || r > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

BigInt factorial_exact(long n) {
  if (n < 0) throw DomainError("factorial_exact: n must be non-negative");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

namespace {

void check_binomial_domain(long n, long r) {
  if (n < 0 || r < 0 || r > n) {
    throw DomainError("log_binomial: requires 0 <= r <= n, got n=" + std::to_string(n) +
                      " r=" + std::to_string(r));
  }
}

}  // namespace

double log_binomial_exact_path(long n, long r) {
  check_binomial_domain(n, r);
  return log_of(binomial_exact(n, r));
}

double log_binomial_lgamma_path(long n, long r) {
  check_binomial_domain(n, r);
  if (r == 0 || r == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(r) + 1.0) -
         std::lgamma(static_cast<double>(n - r) + 1.0);
}

double log_binomial(long n, long r, LogBase base) {
  double v = n <= kLogBinomialExactThreshold ? log_binomial_exact_path(n, r)
                                             : log_binomial_lgamma_path(n, r);
  return in_base(v, base);
}

double binary_entropy_family(double t, int order, LogBase base) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("binary_entropy_family: t must lie in [0,1]");
  }
  switch (order) {
    case 0: {
      if (t == 0.0 || t == 1.0) return 0.0;
      return in_base(-t * std::log(t) - (1.0 - t) * std::log1p(-t), base);
    }
    case 1:
    case 2:
      if (t == 0.0 || t == 1.0) {
        throw DomainError("binary_entropy_family: derivative has a pole at t in {0,1}");
      }
      if (order == 1) return in_base(std::log1p(-t) - std::log(t), base);
      return in_base(-1.0 / (t * (1.0 - t)), base);
    default:
      throw DomainError("binary_entropy_family: order must be 0, 1 or 2");
  }
}

double gaussian_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double gaussian_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gaussian_quantile: p must lie in (0,1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace asymq
