#include "asymq/schur_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "asymq/csv.hpp"
#include "asymq/errors.hpp"

namespace asymq {

Params Params::flipped() const { return validate_params(n_, n_ - m_, k_, k_ - l_); }

std::ostream& operator<<(std::ostream& os, const Params& p) {
  return os << "(" << p.n() << "," << p.m() << "," << p.k() << "," << p.l() << ")";
}

Params validate_params(long n, long m, long k, long l) {
  auto fail = [&](const char* ineq) -> Params {
    throw ConstraintViolation(ineq, std::string("(n,m,k,l)=(") + std::to_string(n) + "," +
                                        std::to_string(m) + "," + std::to_string(k) + "," +
                                        std::to_string(l) + ") violates " + ineq);
  };
  if (n < 0 || m < 0 || k < 0 || l < 0) return fail("n, m, k, l >= 0");
  if (n > std::numeric_limits<int>::max() / 4) return fail("n fits the index range");
  if (m > n) return fail("m <= n");
  if (k > n) return fail("k <= n");
  if (l < m + k - n) return fail("m + k - n <= l");
  if (l > std::min(m, k)) return fail("l <= min(m, k)");
  return Params(static_cast<int>(n), static_cast<int>(m), static_cast<int>(k),
                static_cast<int>(l));
}

std::vector<Params> enumerate_params(int n) {
  std::vector<Params> out;
  for (int m = 0; m <= n; ++m) {
    for (int k = 0; k <= n; ++k) {
      for (int l = std::max(0, m + k - n); l <= std::min(m, k); ++l) {
        out.push_back(validate_params(n, m, k, l));
      }
    }
  }
  return out;
}

long max_exact_n() {
  if (const char* env = std::getenv("ASYMQ_MAX_N")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 300;
}

bool exact_coupling_allowed(const Params& p) {
  return p.n() <= max_exact_n() || p.k() <= kSmallBlockK;
}

BigInt dim_irrep(long n, long x) {
  if (x < 0 || 2 * x > n) throw DomainError("dim_irrep: requires 0 <= x <= n/2");
  return binomial_exact(n, x) - binomial_exact(n, x - 1);
}

BigInt dim_irrep_hook_ratio(long n, long x) {
  if (x < 0 || 2 * x > n) throw DomainError("dim_irrep: requires 0 <= x <= n/2");
  BigInt num = binomial_exact(n, x) * (n - 2 * x + 1);
  BigInt q;
  mpz_divexact_ui(q.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n - x + 1));
  return q;
}

double log_dim_irrep(long n, long x) {
  if (x < 0 || 2 * x > n) throw DomainError("dim_irrep: requires 0 <= x <= n/2");
  if (n <= 2000) return log_of(dim_irrep(n, x));
  return log_binomial_lgamma_path(n, x) + std::log(static_cast<double>(n - 2 * x + 1)) -
         std::log(static_cast<double>(n - x + 1));
}

namespace {

bool valid_projection(int tj, int tm) { return tj >= 0 && std::abs(tm) <= tj && (tj + tm) % 2 == 0; }

long half(int twice) { return twice / 2; }

}  // namespace

BigRational cg_squared(Spin j1, Spin m1, Spin j2, Spin m2, Spin J, Spin M) {
  const int tj1 = j1.twice, tm1 = m1.twice, tj2 = j2.twice, tm2 = m2.twice;
  const int tJ = J.twice, tM = M.twice;
  if (tM != tm1 + tm2) return 0;
  if (!valid_projection(tj1, tm1) || !valid_projection(tj2, tm2) || !valid_projection(tJ, tM)) {
    return 0;
  }
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2 != 0) return 0;

  // Racah's sum with its factorial denominators folded into binomials:
  //   S = sum_k (-1)^k C(a,k) C(b+d, b-k) C(c+e, c-k)
  const long a = half(tj1 + tj2 - tJ);
  const long b = half(tj1 - tm1);
  const long c = half(tj2 + tm2);
  const long bd = half(tj1 + tJ - tj2);
  const long ce = half(tJ + tj2 - tj1);

  BigInt sum = 0;
  for (long k = 0; k <= a; ++k) {
    if (b - k < 0 || c - k < 0) break;
    BigInt term = binomial_exact(a, k) * binomial_exact(bd, b - k) * binomial_exact(ce, c - k);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (sum == 0) return 0;

  BigInt num = sum * sum * (tJ + 1);
  num *= factorial_exact(half(tj1 + tm1)) * factorial_exact(half(tj1 - tm1));
  num *= factorial_exact(half(tj2 + tm2)) * factorial_exact(half(tj2 - tm2));
  num *= factorial_exact(half(tJ + tM)) * factorial_exact(half(tJ - tM));
  BigInt den = factorial_exact(half(tj1 + tj2 + tJ) + 1) * factorial_exact(a);
  den *= factorial_exact(bd) * factorial_exact(ce);
  return BigRational(num, den);
}

// ---------------------------------------------------------------------------

Pmf::Pmf(int x_min, std::vector<BigRational> masses) : x_min_(x_min) {
  if (masses.empty()) throw DomainError("Pmf: empty support");
  prob_.reserve(masses.size());
  log_prob_.reserve(masses.size());
  for (const auto& q : masses) {
    if (q.sign() < 0) throw DomainError("Pmf: negative mass");
    prob_.push_back(q.to_double());
    log_prob_.push_back(q.is_zero() ? -std::numeric_limits<double>::infinity() : q.log());
  }
  exact_ = std::move(masses);
}

Pmf Pmf::from_log_probs(int x_min, std::vector<double> log_probs) {
  if (log_probs.empty()) throw DomainError("Pmf: empty support");
  Pmf out;
  out.x_min_ = x_min;
  out.prob_.reserve(log_probs.size());
  for (double lp : log_probs) out.prob_.push_back(std::exp(lp));
  out.log_prob_ = std::move(log_probs);
  return out;
}

double Pmf::prob(int x) const {
  if (x < x_min() || x > x_max()) return 0.0;
  return prob_[static_cast<size_t>(x - x_min_)];
}

double Pmf::log_prob(int x) const {
  if (x < x_min() || x > x_max()) return -std::numeric_limits<double>::infinity();
  return log_prob_[static_cast<size_t>(x - x_min_)];
}

BigRational Pmf::exact(int x) const {
  if (!exact_) throw PreconditionViolation("Pmf::exact: float-only distribution");
  if (x < x_min() || x > x_max()) return 0;
  return (*exact_)[static_cast<size_t>(x - x_min_)];
}

BigRational Pmf::exact_total() const {
  if (!exact_) throw PreconditionViolation("Pmf::exact_total: float-only distribution");
  BigRational s = 0;
  for (const auto& q : *exact_) s += q;
  return s;
}

double Pmf::total() const {
  double s = 0.0;
  for (double v : prob_) s += v;
  return s;
}

namespace {

// Drops zero masses at both ends of [0, masses.size()).
Pmf trimmed(std::vector<BigRational> masses) {
  size_t lo = 0;
  while (lo + 1 < masses.size() && masses[lo].is_zero()) ++lo;
  size_t hi = masses.size();
  while (hi > lo + 1 && masses[hi - 1].is_zero()) --hi;
  std::vector<BigRational> kept(masses.begin() + static_cast<long>(lo),
                                masses.begin() + static_cast<long>(hi));
  return Pmf(static_cast<int>(lo), std::move(kept));
}

}  // namespace

Pmf pmf(const Params& p) {
  if (!exact_coupling_allowed(p)) {
    throw ResourceCapExceeded("pmf: exact coupling path capped at n <= " +
                              std::to_string(max_exact_n()) + " for k > " +
                              std::to_string(kSmallBlockK) + " (set ASYMQ_MAX_N to raise)");
  }
  const int tj1 = p.l(), tm1 = -p.l();
  const int tj2 = p.K(), tm2 = p.K();
  const int tj3 = p.N() + p.M(), tm3 = p.N() - p.M();
  const int tm12 = tm1 + tm2;
  const int tM = p.n() - 2 * p.m();

  // First coupling is between a lowest- and a highest-weight state, so only
  // j12 with |m12| <= j12 survive.
  struct Branch {
    int tj12;
    BigRational weight;
  };
  std::vector<Branch> branches;
  int tJ_min = std::numeric_limits<int>::max();
  for (int tj12 = std::abs(tj1 - tj2); tj12 <= tj1 + tj2; tj12 += 2) {
    BigRational w = cg_squared(Spin::from_twice(tj1), Spin::from_twice(tm1), Spin::from_twice(tj2),
                               Spin::from_twice(tm2), Spin::from_twice(tj12),
                               Spin::from_twice(tm12));
    if (w.is_zero()) continue;
    tJ_min = std::min(tJ_min, std::abs(tj12 - tj3));
    branches.push_back({tj12, std::move(w)});
  }
  tJ_min = std::max(tJ_min, std::abs(tM));
  const int x_max = (p.n() - tJ_min) / 2;

  std::vector<BigRational> masses(static_cast<size_t>(x_max) + 1);
  for (int x = 0; x <= x_max; ++x) {
    const int tJ = p.n() - 2 * x;
    BigRational acc = 0;
    for (const auto& br : branches) {
      if (tJ < std::abs(br.tj12 - tj3) || tJ > br.tj12 + tj3) continue;
      BigRational c2 = cg_squared(Spin::from_twice(br.tj12), Spin::from_twice(tm12),
                                  Spin::from_twice(tj3), Spin::from_twice(tm3),
                                  Spin::from_twice(tJ), Spin::from_twice(tM));
      if (!c2.is_zero()) acc += br.weight * c2;
    }
    masses[static_cast<size_t>(x)] = std::move(acc);
  }
  return trimmed(std::move(masses));
}

Pmf pmf_closed_kl(const Params& p, Arithmetic mode) {
  if (p.k() != p.l()) throw PreconditionViolation("pmf_closed_kl: requires k == l");
  if (p.m() > p.n() - p.m()) throw PreconditionViolation("pmf_closed_kl: requires m <= n - m");
  const long n = p.n(), m = p.m(), l = p.l();
  const long x_top = std::min(l, m);

  bool exact = mode == Arithmetic::exact ||
               (mode == Arithmetic::automatic && n <= max_exact_n());
  if (mode == Arithmetic::exact && n > max_exact_n()) {
    throw ResourceCapExceeded("pmf_closed_kl: exact path capped at n <= " +
                              std::to_string(max_exact_n()));
  }

  if (exact) {
    const BigInt cnm = binomial_exact(n, m);
    std::vector<BigRational> masses;
    masses.reserve(static_cast<size_t>(x_top) + 1);
    for (long x = 0; x <= x_top; ++x) {
      BigInt num = binomial_exact(n, x) * binomial_exact(l, x) * (n - 2 * x + 1) *
                   binomial_exact(n - l - x, m - l);
      BigInt den = cnm * binomial_exact(m, x) * (n - x + 1);
      masses.emplace_back(num, den);
    }
    return trimmed(std::move(masses));
  }

  const double log_cnm = log_binomial(n, m);
  std::vector<double> lp;
  lp.reserve(static_cast<size_t>(x_top) + 1);
  for (long x = 0; x <= x_top; ++x) {
    lp.push_back(log_binomial(n, x) - log_cnm + log_binomial(l, x) - log_binomial(m, x) +
                 std::log(static_cast<double>(n - 2 * x + 1)) -
                 std::log(static_cast<double>(n - x + 1)) + log_binomial(n - l - x, m - l));
  }
  return Pmf::from_log_probs(0, std::move(lp));
}

Pmf pmf_auto(const Params& p) {
  if (p.k() == p.l() && p.m() <= p.n() - p.m()) return pmf_closed_kl(p);
  if (exact_coupling_allowed(p)) return pmf(p);
  // p(x|n,m,k,0) = p(x|n,n-m,k,k); the right side is the closed form.
  if (p.l() == 0 && p.n() - p.m() <= p.m()) return pmf_closed_kl(p.flipped());
  throw ResourceCapExceeded("pmf: no large-n path for this (k,l); exact coupling capped at n <= " +
                            std::to_string(max_exact_n()));
}

std::pair<Pmf, Pmf> pmf_symmetry_pair(const Params& p) { return {pmf(p), pmf(p.flipped())}; }

BigRational AvgSpectrum::exact_trace() const {
  BigRational s = 0;
  for (const auto& b : blocks) s += b.eigenvalue * BigRational(b.multiplicity, 1);
  return s;
}

AvgSpectrum avg_spectrum(const Params& p) {
  Pmf dist = pmf_auto(p);
  AvgSpectrum out;
  for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
    if (dist.prob(x) <= 0.0 && (!dist.is_exact() || dist.exact(x).is_zero())) continue;
    BigInt dim = dim_irrep(p.n(), x);
    SpectrumBlock b{x, 0, std::exp(dist.log_prob(x) - log_dim_irrep(p.n(), x)), dim};
    if (dist.is_exact()) b.eigenvalue = dist.exact(x) / BigRational(dim, 1);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

double avg_entropy(const Pmf& dist, int n, LogBase base) {
  double s = 0.0;
  for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
    double px = dist.prob(x);
    if (px <= 0.0) continue;
    s += px * (log_dim_irrep(n, x) - dist.log_prob(x));
  }
  return in_base(s, base);
}

double avg_entropy(const Params& p, LogBase base) { return avg_entropy(pmf_auto(p), p.n(), base); }

ThresholdValue hs_epsilon_avg(const Pmf& dist, int n, double eps, LogBase base) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("hs_epsilon_avg: eps must lie in (0,1)");
  struct Atom {
    double value;
    int x;
  };
  std::vector<Atom> atoms;
  for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
    bool positive = dist.is_exact() ? !dist.exact(x).is_zero() : dist.prob(x) > 0.0;
    if (!positive) continue;
    atoms.push_back({log_dim_irrep(n, x) - dist.log_prob(x), x});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });

  const BigRational eps_exact = BigRational::from_double(eps);
  BigRational cum_exact = 0;
  double cum = 0.0;
  size_t i = 0;
  while (i < atoms.size()) {
    // Values equal up to rounding form one atom of the spectrum.
    const double v = atoms[i].value;
    const double tol = 1e-12 * std::max(1.0, std::fabs(v));
    while (i < atoms.size() && atoms[i].value - v <= tol) {
      if (dist.is_exact()) {
        cum_exact += dist.exact(atoms[i].x);
      } else {
        cum += dist.prob(atoms[i].x);
      }
      ++i;
    }
    bool exceeds = dist.is_exact() ? cum_exact > eps_exact : cum > eps;
    if (exceeds) return {in_base(v, base), true};
  }
  // Unreachable for a normalized distribution; the largest atom carries cdf 1.
  return {in_base(atoms.empty() ? 0.0 : atoms.back().value, base), true};
}

ThresholdValue hs_epsilon_avg(const Params& p, double eps, LogBase base) {
  return hs_epsilon_avg(pmf_auto(p), p.n(), eps, base);
}

int pmf_quantile(const Pmf& dist, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("pmf_quantile: eps must lie in (0,1)");
  if (dist.is_exact()) {
    const BigRational target = BigRational::from_double(eps);
    BigRational cum = 0;
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
      cum += dist.exact(x);
      if (cum >= target) return x;
    }
  } else {
    double cum = 0.0;
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
      cum += dist.prob(x);
      if (cum >= eps) return x;
    }
  }
  return dist.x_max();
}

void write_pmf_csv(std::ostream& os, const Pmf& dist) {
  if (dist.is_exact()) {
    CsvWriter w(os, {"x", "p_num", "p_den", "p_float"});
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
      BigRational q = dist.exact(x);
      w.cell(x).cell(q.numerator().get_str()).cell(q.denominator().get_str()).cell(dist.prob(x));
      w.end_row();
    }
  } else {
    CsvWriter w(os, {"x", "p_float"});
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
      w.cell(x).cell(dist.prob(x));
      w.end_row();
    }
  }
}

}  // namespace asymq
