#include "asymq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "asymq/activation.hpp"
#include "asymq/asymptotics.hpp"
#include "asymq/csv.hpp"
#include "asymq/errors.hpp"
#include "asymq/info_spectrum.hpp"
#include "asymq/oracle.hpp"
#include "asymq/schur_weyl.hpp"

namespace asymq {

namespace {

class Collector {
 public:
  explicit Collector(std::string suite) : suite_(std::move(suite)) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    out_.push_back({suite_, name, ok, detail});
  }
  // Runs `body`; an exception counts as a failure of that check.
  void guarded(const std::string& name, const std::function<void(Collector&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

std::string kv(const char* key, double v) { return std::string(key) + "=" + format_real(v); }

// ---- pmf-oracle ----------------------------------------------------------------

void suite_pmf_oracle(Collector& c) {
  c.guarded("pmf matches dense projector oracle, n <= 10", [](Collector& c) {
    double worst = 0.0;
    bool sums = true;
    long count = 0;
    for (int n = 0; n <= 10; ++n) {
      for (const Params& p : enumerate_params(n)) {
        const Pmf d = pmf(p);
        const auto ref = oracle::pmf_oracle(p);
        for (int x = 0; x < static_cast<int>(ref.size()); ++x) {
          worst = std::max(worst, std::fabs(d.prob(x) - ref[static_cast<size_t>(x)]));
        }
        sums = sums && d.exact_total() == BigRational(1);
        ++count;
      }
    }
    c.check("pmf matches dense projector oracle, n <= 10", worst < 1e-10,
            kv("tuples", count) + " " + kv("max_abs_diff", worst));
    c.check("pmf sums to exactly 1, n <= 10", sums);
  });

  c.guarded("closed form equals coupling, k = l, n <= 20", [](Collector& c) {
    bool ok = true;
    long count = 0;
    for (int n = 0; n <= 20; ++n) {
      for (const Params& p : enumerate_params(n)) {
        if (p.k() != p.l() || p.m() > p.n() - p.m()) continue;
        const Pmf a = pmf(p), b = pmf_closed_kl(p, Arithmetic::exact);
        for (int x = std::min(a.x_min(), b.x_min()); x <= std::max(a.x_max(), b.x_max()); ++x) {
          ok = ok && a.exact(x) == b.exact(x);
        }
        ++count;
      }
    }
    c.check("closed form equals coupling, k = l, n <= 20", ok, kv("tuples", count));
  });

  c.guarded("0/1 relabelling symmetry, n <= 20", [](Collector& c) {
    bool ok = true;
    for (int n = 0; n <= 20; ++n) {
      for (const Params& p : enumerate_params(n)) {
        auto [a, b] = pmf_symmetry_pair(p);
        for (int x = std::min(a.x_min(), b.x_min()); x <= std::max(a.x_max(), b.x_max()); ++x) {
          ok = ok && a.exact(x) == b.exact(x);
        }
      }
    }
    c.check("0/1 relabelling symmetry, n <= 20", ok);
  });

  c.guarded("averaged-state entropy matches permutation averaging, n <= 6", [](Collector& c) {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
      for (const Params& p : enumerate_params(n)) {
        worst = std::max(worst, std::fabs(avg_entropy(p) - oracle::entropy_oracle(p)));
      }
    }
    c.check("averaged-state entropy matches permutation averaging, n <= 6", worst < 1e-9,
            kv("max_abs_diff", worst));
  });

  c.guarded("beta delta = 0 branch gives log C(n, m), n <= 30", [](Collector& c) {
    double worst = 0.0;
    for (int n = 1; n <= 30; ++n) {
      for (const Params& p : enumerate_params(n)) {
        if (p.k() == 0) continue;
        if (p.M() != 0 && p.N() != 0) continue;
        worst = std::max(worst, std::fabs(avg_entropy(p) - log_binomial(p.n(), p.m())));
      }
    }
    c.check("beta delta = 0 branch gives log C(n, m), n <= 30", worst < 1e-9, kv("max_abs_diff", worst));
  });
}

// ---- typeI -----------------------------------------------------------------------

void suite_typeI(Collector& c) {
  c.guarded("q pmf normalized with the stated mean", [](Collector& c) {
    double worst_sum = 0.0, worst_mean = 0.0;
    for (double xi : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0}) {
      for (int k = 0; k <= 6; ++k) {
        for (int l = 0; l <= k; ++l) {
          const auto r = TypeIRatios::make(xi, k, l);
          const auto q = typeI_q_pmf(r);
          double s = 0.0, m = 0.0;
          for (size_t x = 0; x < q.size(); ++x) {
            s += q[x];
            m += static_cast<double>(x) * q[x];
          }
          worst_sum = std::max(worst_sum, std::fabs(s - 1.0));
          worst_mean = std::max(worst_mean, std::fabs(m - typeI_expectation(r)));
        }
      }
    }
    c.check("q pmf normalized with the stated mean", worst_sum < 1e-12 && worst_mean < 1e-12,
            kv("sum_err", worst_sum) + " " + kv("mean_err", worst_mean));
  });

  c.guarded("n max|p - q| bounded, (0.5, 2, 1)", [](Collector& c) {
    const auto r = TypeIRatios::make(0.5, 2, 1);
    const auto q = typeI_q_pmf(r);
    std::vector<double> scaled;
    for (long n : {100L, 200L, 400L, 800L, 1600L, 3200L}) {
      const Pmf d = pmf(validate_params(n, n / 2, 2, 1));
      double worst = 0.0;
      for (int x = 0; x <= 2; ++x) worst = std::max(worst, std::fabs(d.prob(x) - q[static_cast<size_t>(x)]));
      scaled.push_back(static_cast<double>(n) * worst);
    }
    bool ok = true;
    std::ostringstream os;
    for (size_t i = 1; i < scaled.size(); ++i) {
      const double ratio = scaled[i] / scaled[i - 1];
      ok = ok && ratio >= 0.3 && ratio <= 3.0;
      os << format_real(ratio) << (i + 1 < scaled.size() ? "," : "");
    }
    c.check("n max|p - q| bounded, (0.5, 2, 1)", ok, "ratios=" + os.str());
  });

  c.guarded("a(n)/log n tracks S/log n at n = 1e4", [](Collector& c) {
    const auto r = TypeIRatios::make(0.5, 2, 1);
    const long n = 10000;
    const double logn = std::log(static_cast<double>(n));
    const double s = avg_entropy(validate_params(n, n / 2, 2, 1)) / logn;
    const double a = typeI_entropy_approx(n, r).value / logn;
    c.check("a(n)/log n tracks S/log n at n = 1e4", std::fabs(s - a) < 0.02, kv("S", s) + " " + kv("a", a));
  });

  c.guarded("decohered asymmetry approaches its Type I limit", [](Collector& c) {
    const auto r = TypeIRatios::make(0.5, 2, 1);
    const double lim = decohered_typeI(r);
    double prev = 1e300;
    bool ok = true;
    std::ostringstream os;
    for (long n = 100; n <= 6400; n *= 2) {
      const double gap = std::fabs(decohered_asymmetry(validate_params(n, n / 2, 2, 1)) - lim);
      ok = ok && gap < prev;
      prev = gap;
      os << format_real(gap) << ",";
    }
    c.check("decohered asymmetry approaches its Type I limit", ok && prev < 1e-3, "gaps=" + os.str());
  });
}

// ---- typeII ----------------------------------------------------------------------

void suite_typeII(Collector& c) {
  c.guarded("mu <= 1/2 <= nu and mu + nu = 1", [](Collector& c) {
    bool ok = true;
    for (int b = 0; b <= 20; ++b) {
      for (int d = 0; b + d <= 20; ++d) {
        for (int x = b; x <= 20 - d; ++x) {
          const auto p = typeII_params(b * 0.05, d * 0.05, x * 0.05);
          ok = ok && p.mu >= 0.0 && p.mu <= 0.5 && p.nu >= 0.5 && std::fabs(p.mu + p.nu - 1.0) <= 1e-15;
        }
      }
    }
    c.check("mu <= 1/2 <= nu and mu + nu = 1", ok);
  });

  c.guarded("Gaussian limit at alpha = 0.2, xi = 0.5, n = 2000", [](Collector& c) {
    const auto ratios = typeII_from_ratios(0.2, 0.3, 0.0, 0.5);
    const auto rep = clt_empirical_check({kl_slice_params(2000, 0.2, 0.5)}, ratios);
    const auto& row = rep.rows.front();
    c.check("sup cdf distance < 0.05", row.sup_cdf_dist < 0.05, kv("sup", row.sup_cdf_dist));
    c.check("|mean - (n mu + phi)| < 0.5", row.mean_err < 0.5, kv("err", row.mean_err));
    c.check("|var/n - sigma^2| < 0.01 sigma^2", row.var_err < 0.01 * *ratios.sigma2, kv("err", row.var_err));
  });

  c.guarded("tail mass decays exponentially", [](Collector& c) {
    const auto ratios = typeII_from_ratios(0.2, 0.3, 0.0, 0.5);
    std::vector<Params> seq;
    for (long n = 200; n <= 3200; n *= 2) seq.push_back(kl_slice_params(n, 0.2, 0.5));
    const auto rep = clt_empirical_check(seq, ratios);
    bool ok = true;
    for (size_t i = 1; i < rep.rows.size(); ++i) ok = ok && rep.rows[i].tail_log_slope < 0.0;
    c.check("tail mass decays exponentially", ok && rep.tail_log_slope_fit < 0.0,
            kv("fit_slope", rep.tail_log_slope_fit));
  });

  c.guarded("coherent >= decohered, n <= 40", [](Collector& c) {
    double worst = 1e300;
    for (int n = 0; n <= 40; ++n) {
      for (const Params& p : enumerate_params(n)) {
        worst = std::min(worst, avg_entropy(p) - decohered_asymmetry(p));
      }
    }
    c.check("coherent >= decohered, n <= 40", worst >= -1e-12, kv("min_gap", worst));
  });

  c.guarded("ratio-grid gap >= 0", [](Collector& c) {
    double worst = 1e300;
    for (int b = 0; b <= 20; ++b) {
      for (int d = 0; b + d <= 20; ++d) {
        if (b + d == 0) continue;
        for (int x = b; x <= 20 - d; ++x) worst = std::min(worst, zmy_gap(typeII_params(b * 0.05, d * 0.05, x * 0.05)));
      }
    }
    c.check("ratio-grid gap >= 0", worst >= -1e-12, kv("min_gap", worst));
  });

  c.guarded("decohered asymmetry vs its Type II expansion at n = 4000", [](Collector& c) {
    const auto ratios = typeII_from_ratios(0.25, 0.25, 0.25, 0.25);
    const double exact = decohered_asymmetry(validate_params(4000, 2000, 2000, 1000));
    const double approx = decohered_typeII(ratios, 4000);
    c.check("decohered asymmetry vs its Type II expansion at n = 4000", std::fabs(exact - approx) < 0.01,
            kv("diff", exact - approx));
  });
}

// ---- refined ---------------------------------------------------------------------

void suite_refined(Collector& c) {
  c.guarded("C1 = h(mu) on 1000 random points", [](Collector& c) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
      const double xi = 0.5 * uni(rng);
      const double alpha = xi * uni(rng);
      if (xi <= 1e-6 || alpha <= 1e-6 || xi - alpha <= 1e-6) continue;
      const auto p = typeII_from_ratios(alpha, xi - alpha, 0.0, 1.0 - xi);
      const auto k = typeII_refined_constants(p);
      worst = std::max(worst, std::fabs(k.c1 - binary_entropy(p.mu)));
      ++done;
    }
    c.check("C1 = h(mu) on 1000 random points", worst < 1e-12, kv("max_abs_diff", worst));
  });

  c.guarded("refined prediction converges, alpha = 0.2, xi = 0.5", [](Collector& c) {
    const auto ratios = typeII_from_ratios(0.2, 0.3, 0.0, 0.5);
    const auto k = typeII_refined_constants(ratios);
    double prev = 1e300;
    bool mono = true;
    std::ostringstream os;
    for (long n : {500L, 1000L, 2000L, 4000L}) {
      const double err = std::fabs(avg_entropy(kl_slice_params(n, 0.2, 0.5)) - k.prediction(n));
      mono = mono && err < prev;
      prev = err;
      os << format_real(err) << ",";
    }
    c.check("refined prediction converges, alpha = 0.2, xi = 0.5", mono && prev < 0.05, "residuals=" + os.str());
  });

  c.guarded("C3..C6 match finite differences of the z-expansion", [](Collector& c) {
    const auto p = typeII_from_ratios(0.2, 0.3, 0.0, 0.5);
    const auto k = typeII_refined_constants(p);
    // f(z) = n C1 + C2' + (C3 + C5/n) z + (C4/n + C6/n^2) z^2 + O(z^3/n^2)
    const long n = 1000;
    const double h1 = 1e-2, h2 = 1e-1;
    const double f0 = refined_expansion_exact_form(p, n, 0.0);
    const double d1 = (refined_expansion_exact_form(p, n, h1) - refined_expansion_exact_form(p, n, -h1)) / (2.0 * h1);
    const double d2 =
        (refined_expansion_exact_form(p, n, h2) - 2.0 * f0 + refined_expansion_exact_form(p, n, -h2)) / (h2 * h2);
    const double nn = static_cast<double>(n);
    const double e0 = std::fabs(f0 - nn * k.c1 - k.c2_as_printed);
    const double e1 = std::fabs(d1 - (k.c3 + k.c5 / nn));
    const double e2 = std::fabs(0.5 * d2 - (k.c4 / nn + k.c6 / (nn * nn)));
    c.check("C3..C6 match finite differences of the z-expansion", e0 < 1e-8 && e1 < 1e-6 && e2 < 1e-8,
            kv("e0", e0) + " " + kv("e1", e1) + " " + kv("e2", e2));
  });
}

// ---- infospec --------------------------------------------------------------------

std::vector<double> random_simplex(std::mt19937_64& rng, int d) {
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

// min sum_i q_i w_i s.t. sum_i p_i w_i >= 1 - eps, 0 <= w <= 1, by enumerating
// LP vertices: every coordinate is 0 or 1 except at most one.
double dh_vertex_oracle(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  const size_t d = p.size();
  double best = 1e300;
  for (size_t mask = 0; mask < (size_t{1} << d); ++mask) {
    for (size_t free = 0; free <= d; ++free) {
      double pm = 0.0, qm = 0.0;
      for (size_t i = 0; i < d; ++i) {
        if (i != free && ((mask >> i) & 1u)) {
          pm += p[i];
          qm += q[i];
        }
      }
      double need = 1.0 - eps - pm;
      if (free < d && need > 0.0 && p[free] > 0.0) {
        const double w = need / p[free];
        if (w > 1.0) continue;
        qm += w * q[free];
        need = 0.0;
      }
      if (need > 1e-15) continue;
      best = std::min(best, qm);
    }
  }
  return best > 0.0 ? -std::log(best) : std::numeric_limits<double>::infinity();
}

void suite_infospec(Collector& c) {
  c.guarded("LL3 chain on 100 random commuting 4-dim pairs", [](Collector& c) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int fails = 0;
    for (int t = 0; t < 100; ++t) {
      const auto rho = DensityMatrix::diagonal(random_simplex(rng, 4));
      const auto sigma = DensityMatrix::diagonal(random_simplex(rng, 4));
      const double eps = 0.8 * uni(rng);
      const double delta = (1.0 - eps) * (0.05 + 0.9 * uni(rng));
      if (!ll3_chain_check(rho, sigma, eps, delta).holds()) ++fails;
    }
    c.check("LL3 chain on 100 random commuting 4-dim pairs", fails == 0, kv("failures", fails));
  });

  c.guarded("D_H matches LP vertex oracle, dim <= 3", [](Collector& c) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int d = 2 + t % 2;
      const auto p = random_simplex(rng, d), q = random_simplex(rng, d);
      const double eps = 0.95 * uni(rng);
      const double a = dh_epsilon(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q), eps);
      worst = std::max(worst, std::fabs(a - dh_vertex_oracle(p, q, eps)));
    }
    c.check("D_H matches LP vertex oracle, dim <= 3", worst < 1e-6, kv("max_abs_diff", worst));
  });

  c.guarded("M bounds bracket the orthogonal count", [](Collector& c) {
    bool ok = true;
    for (int w = 2; w <= 16; ++w) {
      std::vector<DensityMatrix> states;
      for (int x = 0; x < w; ++x) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(w);
        e(x) = 1.0;
        states.push_back(DensityMatrix::pure(e));
      }
      const auto b = m_bounds(CqEnsemble::uniform(states), 0.5, 0.1, 0.1);
      const double exact = nxu_logM(1, w, 1);
      const double slack_lo = std::log(1.0 / (0.1 * 0.1));
      const double slack_hi = std::log(1.0 / (0.1 * 0.01));
      ok = ok && b.lower <= exact && exact <= b.upper;
      ok = ok && std::fabs(b.lower + slack_lo - std::log(w)) < 1e-12 && std::fabs(b.upper - slack_hi - std::log(w)) < 1e-12;
    }
    c.check("M bounds bracket the orthogonal count", ok);
  });

  c.guarded("H_s, D_s monotone in their slack", [](Collector& c) {
    std::mt19937_64 rng(3);
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      const auto rho = DensityMatrix::diagonal(random_simplex(rng, 5));
      const auto sigma = DensityMatrix::diagonal(random_simplex(rng, 5));
      double prev_h = -1e300, prev_d = -1e300, prev_dh = -1e300;
      for (int i = 0; i < 20; ++i) {
        const double e = 0.05 * i;
        const double hv = hs_epsilon(rho, e), dv = ds_delta(rho, sigma, e), dhv = dh_epsilon(rho, sigma, e);
        ok = ok && hv >= prev_h && dv >= prev_d && dhv >= prev_dh - 1e-12;
        prev_h = hv;
        prev_d = dv;
        prev_dh = dhv;
      }
    }
    c.check("H_s, D_s, D_H monotone in their slack", ok);
  });
}

// ---- activation ------------------------------------------------------------------

void suite_activation(Collector& c) {
  c.guarded("antisymmetric example: sum form = binomial form", [](Collector& c) {
    double worst = 0.0;
    for (long n = 1; n <= 20; ++n) {
      for (long d = n; d <= 60; ++d) {
        worst = std::max(worst, std::fabs(antisym_activation_sum(n, d) - antisym_activation_binomial(n, d)));
      }
    }
    c.check("antisymmetric example: sum form = binomial form", worst < 1e-10, kv("max_abs_diff", worst));
  });

  c.guarded("antisymmetric example: maximum at d = n", [](Collector& c) {
    bool ok = true;
    for (long n = 1; n <= 10; ++n) {
      const auto best = antisym_optimal_d(n);
      ok = ok && best.d == n && std::fabs(best.value - log_binomial(n * n + n - 1, n)) < 1e-10;
      double prev = 1e300;
      for (long d = n; d <= std::max(4 * n, 50L); ++d) {
        const double v = antisym_activation(n, d);
        ok = ok && v <= prev + 1e-12;
        prev = v;
      }
    }
    c.check("antisymmetric example: maximum at d = n, nonincreasing in d", ok);
  });

  c.guarded("antisymmetric example: value/(n log n) decreasing toward 1", [](Collector& c) {
    double prev = 1e300;
    bool ok = true;
    for (long n = 2; n <= 200; n *= 2) {
      const double ratio = antisym_activation(n, n) / (static_cast<double>(n) * std::log(static_cast<double>(n)));
      ok = ok && ratio < prev && ratio > 1.0;
      prev = ratio;
    }
    c.check("antisymmetric example: value/(n log n) decreasing toward 1", ok, kv("ratio_at_200", prev));
  });

  c.guarded("coherent activation >= decohered activation, n <= 40", [](Collector& c) {
    double worst = 1e300;
    for (int n = 0; n <= 40; n += 4) {
      for (const Params& p : enumerate_params(n)) {
        const auto a = permutation_activation(p, true), b = permutation_activation(p, false);
        worst = std::min(worst, a.activation - b.activation);
      }
    }
    c.check("coherent activation >= decohered activation, n <= 40", worst >= -1e-12, kv("min_gap", worst));
  });
}

using SuiteFn = void (*)(Collector&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"pmf-oracle", suite_pmf_oracle}, {"typeI", suite_typeI},         {"typeII", suite_typeII},
      {"refined", suite_refined},       {"infospec", suite_infospec}, {"activation", suite_activation},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_known_suite(const std::string& name) {
  if (name == "all") return true;
  const auto& v = suite_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

std::vector<CheckResult> run_suite(const std::string& name) {
  if (!is_known_suite(name)) throw DomainError("unknown suite: " + name);
  std::vector<CheckResult> out;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    Collector c(suite);
    fn(c);
    auto part = c.take();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace asymq
