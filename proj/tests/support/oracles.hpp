#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numeric paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace asymq::testing {

// Pascal's triangle in long double; exact for the small rows the tests use.
inline std::vector<std::vector<long double>> pascal_rows(int max_n) {
  std::vector<std::vector<long double>> rows(static_cast<size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) {
    rows[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1.0L);
    for (int r = 1; r < n; ++r) {
      rows[static_cast<size_t>(n)][static_cast<size_t>(r)] =
          rows[static_cast<size_t>(n - 1)][static_cast<size_t>(r - 1)] + rows[static_cast<size_t>(n - 1)][static_cast<size_t>(r)];
    }
  }
  return rows;
}

// Sum of log(i) ratios, no lgamma.
inline double log_binomial_by_sum(long n, long r) {
  if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
  r = std::min(r, n - r);
  long double s = 0.0L;
  for (long i = 1; i <= r; ++i) s += std::log(static_cast<long double>(n - r + i)) - std::log(static_cast<long double>(i));
  return static_cast<double>(s);
}

// erf by its Maclaurin series; fine for |x| <= 3.
inline double erf_taylor(double x) {
  long double term = x, sum = x;
  const long double x2 = static_cast<long double>(x) * x;
  for (int k = 1; k < 200; ++k) {
    term *= -x2 / k;
    sum += term / (2 * k + 1);
  }
  return static_cast<double>(2.0L / std::sqrt(3.14159265358979323846264338327950288L) * sum);
}

// Standard normal cdf: Maclaurin series for |t| <= 5, asymptotic Mills-ratio
// series beyond (relative error below 1e-9 there).
inline double phi_taylor(double t) {
  if (std::fabs(t) <= 5.0) return 0.5 * (1.0 + erf_taylor(t / std::sqrt(2.0)));
  const double a = std::fabs(t);
  const double dens = std::exp(-0.5 * a * a) / std::sqrt(2.0 * 3.14159265358979323846);
  const double a2 = a * a;
  const double tail = dens / a * (1.0 - 1.0 / a2 + 3.0 / (a2 * a2) - 15.0 / (a2 * a2 * a2) + 105.0 / (a2 * a2 * a2 * a2));
  return t > 0.0 ? 1.0 - tail : tail;
}

// q(x) = sum_y C(k-l, y) xi^y (1-xi)^{k-l-y} C(l, x-y) (1-xi)^{x-y} xi^{l-x+y}
inline std::vector<double> q_double_sum(double xi, int k, int l) {
  const auto pas = pascal_rows(std::max(k, 1));
  std::vector<double> out(static_cast<size_t>(k) + 1, 0.0);
  for (int x = 0; x <= k; ++x) {
    long double s = 0.0L;
    for (int y = 0; y <= k - l; ++y) {
      const int z = x - y;
      if (z < 0 || z > l) continue;
      s += pas[static_cast<size_t>(k - l)][static_cast<size_t>(y)] * std::pow(static_cast<long double>(xi), y) *
           std::pow(1.0L - xi, k - l - y) * pas[static_cast<size_t>(l)][static_cast<size_t>(z)] *
           std::pow(1.0L - xi, z) * std::pow(static_cast<long double>(xi), l - z);
    }
    out[static_cast<size_t>(x)] = static_cast<double>(s);
  }
  return out;
}

// min sum_i q_i w_i s.t. sum_i p_i w_i >= 1 - eps, 0 <= w <= 1, by LP vertex
// enumeration: at a vertex every weight is 0 or 1 except at most one.
inline double dh_vertex_oracle(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  const size_t d = p.size();
  double best = std::numeric_limits<double>::infinity();
  for (size_t mask = 0; mask < (size_t{1} << d); ++mask) {
    for (size_t free = 0; free <= d; ++free) {
      if (free < d && ((mask >> free) & 1u)) continue;
      double pm = 0.0, qm = 0.0;
      for (size_t i = 0; i < d; ++i) {
        if ((mask >> i) & 1u) {
          pm += p[i];
          qm += q[i];
        }
      }
      double need = 1.0 - eps - pm;
      if (need > 1e-15) {
        if (free >= d || p[free] <= 0.0) continue;
        const double w = need / p[free];
        if (w > 1.0) continue;
        qm += w * q[free];
      }
      best = std::min(best, qm);
    }
  }
  return best > 0.0 ? -std::log(best) : std::numeric_limits<double>::infinity();
}

// Same minimum over diagonal tests on a uniform grid of step `h` for the
// first d-1 weights; the last weight is the smallest that meets the
// constraint. Qubit and qutrit only.
inline double dh_grid_oracle(const std::vector<double>& p, const std::vector<double>& q, double eps, double h) {
  const size_t d = p.size();
  const int steps = static_cast<int>(std::lround(1.0 / h));
  double best = std::numeric_limits<double>::infinity();
  auto finish = [&](double pm, double qm) {
    double need = 1.0 - eps - pm;
    if (need > 0.0) {
      if (p[d - 1] <= 0.0) return;
      const double w = need / p[d - 1];
      if (w > 1.0 + 1e-15) return;
      qm += std::min(1.0, w) * q[d - 1];
    }
    best = std::min(best, qm);
  };
  if (d == 2) {
    for (int i = 0; i <= steps; ++i) finish(i * h * p[0], i * h * q[0]);
  } else {
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) finish(i * h * p[0] + j * h * p[1], i * h * q[0] + j * h * q[1]);
    }
  }
  return best > 0.0 ? -std::log(best) : std::numeric_limits<double>::infinity();
}

// sup{lambda : sum_{i : p_i <= e^lambda q_i} p_i <= delta} for diagonal pairs,
// found on a dense lambda grid and refined by bisection on the indicator.
inline double ds_grid_oracle(const std::vector<double>& p, const std::vector<double>& q, double delta) {
  auto g = [&](double lam) {
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0 && p[i] <= std::exp(lam) * q[i]) s += p[i];
    }
    return s;
  };
  const double lo = -60.0, hi = 60.0;
  const int steps = 120000;
  double prev = lo;
  if (g(lo) > delta) return -std::numeric_limits<double>::infinity();
  for (int s = 1; s <= steps; ++s) {
    const double lam = lo + (hi - lo) * s / steps;
    if (g(lam) > delta) {
      double a = prev, b = lam;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        (g(mid) > delta ? b : a) = mid;
      }
      return b;
    }
    prev = lam;
  }
  return std::numeric_limits<double>::infinity();
}

// sup{lambda : sum_{lam_i >= e^-lambda} lam_i <= eps} by the same grid-plus-bisection.
inline double hs_grid_oracle(const std::vector<double>& spectrum, double eps) {
  auto g = [&](double lam) {
    double s = 0.0;
    for (double v : spectrum) {
      if (v > 0.0 && v >= std::exp(-lam)) s += v;
    }
    return s;
  };
  const double lo = -1.0, hi = 80.0;
  const int steps = 81000;
  double prev = lo;
  for (int s = 1; s <= steps; ++s) {
    const double lam = lo + (hi - lo) * s / steps;
    if (g(lam) > eps) {
      double a = prev, b = lam;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        (g(mid) > eps ? b : a) = mid;
      }
      return b;
    }
    prev = lam;
  }
  return std::numeric_limits<double>::infinity();
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, int d) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(static_cast<size_t>(d));
  double s = 0.0;
  for (auto& x : v) s += (x = ex(rng));
  for (auto& x : v) x /= s;
  double rest = 1.0;
  for (size_t i = 0; i + 1 < v.size(); ++i) rest -= v[i];
  v.back() = rest;
  return v;
}

// Binary entropy in nats straight from the definition.
inline double h_direct(double t) {
  double s = 0.0;
  if (t > 0.0) s -= t * std::log(t);
  if (t < 1.0) s -= (1.0 - t) * std::log(1.0 - t);
  return s;
}

}  // namespace asymq::testing
