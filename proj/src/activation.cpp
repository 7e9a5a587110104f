#include "asymq/activation.hpp"

#include <algorithm>
#include <cmath>

#include "asymq/asymptotics.hpp"
#include "asymq/errors.hpp"

namespace asymq {

ActivationReport permutation_activation(const Params& p, bool coherent, LogBase base) {
  ActivationReport r{};
  r.base = base;
  r.asym_added = log_binomial(p.k(), p.l(), base);
  r.asym_whole = coherent ? avg_entropy(p, base) : decohered_asymmetry(p, base);
  r.activation = r.asym_whole - r.asym_added;
  return r;
}

namespace {

void check_nd(long n, long d) {
  if (n < 1) throw DomainError("antisym_activation: requires n >= 1");
  if (d < n) throw DomainError("antisym_activation: requires d >= n");
}

}  // namespace

double antisym_activation_binomial(long n, long d, LogBase base) {
  check_nd(n, d);
  return in_base(log_binomial(n * d + n - 1, n) - log_binomial(d, n), base);
}

double antisym_activation_sum(long n, long d, LogBase base) {
  check_nd(n, d);
  double s = 0.0;
  for (long j = 0; j < n; ++j) {
    s += std::log(static_cast<double>(n) + static_cast<double>((n - 1) * (j + 1)) / static_cast<double>(d - j));
  }
  return in_base(s, base);
}

double antisym_activation(long n, long d, LogBase base) {
  const double b = antisym_activation_binomial(n, d, base);
  const double s = antisym_activation_sum(n, d, base);
  if (std::fabs(b - s) > 1e-10) {
    throw PreconditionViolation("antisym_activation: binomial and sum forms disagree");
  }
  return b;
}

OptimalD antisym_optimal_d(long n, LogBase base) {
  if (n < 1) throw DomainError("antisym_optimal_d: requires n >= 1");
  OptimalD best{n, antisym_activation(n, n, base)};
  for (long d = n + 1; d <= std::max(4 * n, 50L); ++d) {
    const double v = antisym_activation(n, d, base);
    if (v > best.value) best = {d, v};
  }
  return best;
}

}  // namespace asymq
