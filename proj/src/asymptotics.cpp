#include "asymq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "asymq/errors.hpp"

namespace asymq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double h(double t) { return binary_entropy_family(t, 0); }
double h1(double t) { return binary_entropy_family(t, 1); }
double h2(double t) { return binary_entropy_family(t, 2); }

std::vector<double> binomial_pmf(int trials, double p) {
  std::vector<double> out(static_cast<size_t>(trials) + 1, 0.0);
  for (int x = 0; x <= trials; ++x) {
    double lc = log_binomial(trials, x);
    double v = std::exp(lc) * std::pow(p, x) * std::pow(1.0 - p, trials - x);
    out[static_cast<size_t>(x)] = v;
  }
  return out;
}

void require_eps(double eps, const char* who) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError(std::string(who) + ": eps must lie in (0,1)");
}

TypeIIParams finish(double alpha, double beta, double gamma, double delta) {
  TypeIIParams p{};
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  p.xi = alpha + beta;
  p.kappa = alpha + gamma;
  p.D = 4.0 * beta * delta + (2.0 * p.xi - 1.0) * (2.0 * p.xi - 1.0);
  const double root = std::min(1.0, std::sqrt(std::max(0.0, p.D)));
  p.mu = 0.5 * (1.0 - root);
  p.nu = 1.0 - p.mu;
  if (p.D > 0.0) {
    const double s2 = (1.0 - beta - delta) * beta * delta / p.D;
    p.sigma2 = s2;
    if (p.mu != 0.5) p.phi = (s2 - p.mu) / (1.0 - 2.0 * p.mu);
  }
  return p;
}

}  // namespace

// ---- Type I ------------------------------------------------------------------

TypeIRatios TypeIRatios::make(double xi, int k, int l) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw ConstraintViolation("0 <= xi <= 1", "TypeIRatios: xi outside [0,1]");
  if (l < 0) throw ConstraintViolation("l >= 0", "TypeIRatios: l < 0");
  if (l > k) throw ConstraintViolation("l <= k", "TypeIRatios: l > k");
  return TypeIRatios{xi, k, l};
}

std::vector<double> typeI_q_pmf(const TypeIRatios& r) {
  const auto a = binomial_pmf(r.k - r.l, r.xi);
  const auto b = binomial_pmf(r.l, 1.0 - r.xi);
  std::vector<double> out(static_cast<size_t>(r.k) + 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double typeI_expectation(const TypeIRatios& r) {
  return (r.k - r.l) * r.xi + r.l * (1.0 - r.xi);
}

TypeIEntropyApprox typeI_entropy_approx(long n, const TypeIRatios& r, LogBase base) {
  if (n < 1) throw DomainError("typeI_entropy_approx: n >= 1");
  const double u = typeI_expectation(r);
  const auto q = typeI_q_pmf(r);
  double a = u * std::log(static_cast<double>(n)) + u - 0.5 * std::log(2.0 * std::numbers::pi);
  for (size_t x = 0; x < q.size(); ++x) {
    if (q[x] <= 0.0) continue;
    const double xlogx = x == 0 ? 0.0 : (static_cast<double>(x) + 0.5) * std::log(static_cast<double>(x));
    a += q[x] * (-xlogx - std::log(q[x]));
  }
  return {in_base(a, base), r.k == 0 && r.l == 0};
}

double typeI_logM(long n, const TypeIRatios& r, double eps, LogBase base) {
  require_eps(eps, "typeI_logM");
  if (n < 1) throw DomainError("typeI_logM: n >= 1");
  const auto q = typeI_q_pmf(r);
  double cum = 0.0;
  size_t x = 0;
  for (; x < q.size(); ++x) {
    cum += q[x];
    if (cum >= eps) break;
  }
  x = std::min(x, q.size() - 1);
  return in_base(static_cast<double>(x) * std::log(static_cast<double>(n)), base);
}

// ---- Type II -----------------------------------------------------------------

bool TypeIIParams::clt_regime() const { return kappa > 0.0 && beta > 0.0 && delta > 0.0; }
bool TypeIIParams::degenerate_mixture() const { return beta * delta == 0.0; }
bool TypeIIParams::no_attached_block() const { return kappa == 0.0; }

TypeIIParams typeII_params(double beta, double delta, double xi) {
  if (beta < 0.0 || delta < 0.0) throw ConstraintViolation("beta, delta >= 0", "typeII_params: negative ratio");
  if (xi < beta - 1e-12) throw ConstraintViolation("xi >= beta", "typeII_params: xi < beta");
  if (1.0 - xi < delta - 1e-12) throw ConstraintViolation("1 - xi >= delta", "typeII_params: 1 - xi < delta");
  return finish(std::max(0.0, xi - beta), beta, std::max(0.0, 1.0 - xi - delta), delta);
}

TypeIIParams typeII_from_ratios(double alpha, double beta, double gamma, double delta) {
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || delta < 0.0) {
    throw ConstraintViolation("alpha, beta, gamma, delta >= 0", "typeII_from_ratios: negative ratio");
  }
  if (std::fabs(alpha + beta + gamma + delta - 1.0) > 1e-12) {
    throw ConstraintViolation("alpha + beta + gamma + delta = 1", "typeII_from_ratios: ratios do not sum to 1");
  }
  return finish(alpha, beta, gamma, delta);
}

TypeIIParams typeII_from_params(const Params& p) {
  if (p.n() == 0) throw DomainError("typeII_from_params: n = 0");
  const double n = p.n();
  return finish(p.l() / n, p.M() / n, p.K() / n, p.N() / n);
}

TypeIIParams nma_slice(double xi, double kappa) {
  if (!(xi >= 0.0 && xi <= 1.0 && kappa >= 0.0 && kappa <= 1.0)) {
    throw ConstraintViolation("0 <= xi, kappa <= 1", "nma_slice: ratio outside [0,1]");
  }
  return finish(xi * kappa, xi * (1.0 - kappa), (1.0 - xi) * kappa, (1.0 - xi) * (1.0 - kappa));
}

Params kl_slice_params(long n, double alpha, double xi) {
  const long m = std::lround(xi * static_cast<double>(n));
  const long l = std::lround(alpha * static_cast<double>(n));
  return validate_params(n, m, l, l);
}

BranchValue typeII_entropy_leading(const TypeIIParams& p, long n, LogBase base) {
  if (n < 0) throw DomainError("typeII_entropy_leading: n >= 0");
  if (p.no_attached_block()) return {0.0, false};
  if (p.degenerate_mixture()) {
    const long m = std::lround(p.xi * static_cast<double>(n));
    return {log_binomial(n, m, base), false};
  }
  return {in_base(static_cast<double>(n) * h(p.mu), base), true};
}

RefinedConstants typeII_refined_constants(const TypeIIParams& p, LogBase base) {
  if (std::fabs(p.gamma) > 1e-15) throw PreconditionViolation("typeII_refined_constants: requires gamma == 0");
  if (!(p.xi > 0.0 && p.xi <= 0.5)) throw PreconditionViolation("typeII_refined_constants: requires 0 < xi <= 1/2");
  if (!(p.alpha > 0.0 && p.beta > 0.0 && p.delta > 0.0)) {
    throw PreconditionViolation("typeII_refined_constants: requires alpha, beta, delta > 0");
  }
  const double a = p.alpha, b = p.beta, xi = p.xi, mu = p.mu;
  const double A = 1.0 - a - mu;
  const double r = b / A;
  const double s = mu / xi, t = mu / a;

  RefinedConstants c{};
  c.c1 = h(xi) + xi * h(s) - a * h(t) - A * h(r);
  c.c2_as_printed = 0.5 * std::log(a * b * (1.0 - r) / (xi * xi * (1.0 - xi)));
  c.c2 = c.c2_as_printed + 0.5 * std::log(t * (1.0 - t) / (s * (1.0 - s)));
  c.c3 = h1(s) - h1(t) + h(r) - r * h1(r);
  c.c4 = h2(s) / (2.0 * xi) - h2(t) / (2.0 * a) - b * b / (2.0 * A * A * A) * h2(r);
  c.c5 = -0.5 * b / (A * (A - b));
  c.c6 = 0.25 * (1.0 / (A * A) - 1.0 / ((A - b) * (A - b)));
  c.sigma2 = p.sigma2.value_or(kNaN);
  c.phi = p.phi.value_or(kNaN);

  if (base != LogBase::e) {
    for (double* v : {&c.c1, &c.c2, &c.c2_as_printed, &c.c3, &c.c4, &c.c5, &c.c6}) *v = in_base(*v, base);
  }
  c.base = base;
  return c;
}

double refined_expansion_exact_form(const TypeIIParams& p, long n, double z, LogBase base) {
  const double nn = static_cast<double>(n);
  const double a = p.alpha, b = p.beta, xi = p.xi, mu = p.mu;
  const double w = z / nn;
  const double A = 1.0 - a - mu - w;
  double v = nn * h(xi) + nn * xi * h(mu / xi + w / xi) - nn * a * h(mu / a + w / a) - nn * A * h(b / A);
  v += 0.5 * std::log(a * b / (xi * xi * (1.0 - xi))) + 0.5 * std::log(1.0 - b / A);
  return in_base(v, base);
}

double typeII_logM(const TypeIIParams& p, long n, double eps, LogBase base) {
  require_eps(eps, "typeII_logM");
  if (!p.clt_regime() || !p.sigma2 || *p.sigma2 <= 0.0) {
    throw PreconditionViolation("typeII_logM: requires alpha + gamma > 0 and beta, delta > 0");
  }
  const double nn = static_cast<double>(n);
  const double v = nn * h(p.mu) + std::sqrt(nn) * h1(p.mu) * gaussian_quantile(eps) / std::sqrt(*p.sigma2);
  return in_base(v, base);
}

// ---- Decohered ---------------------------------------------------------------

double decohered_asymmetry(const Params& p, LogBase base) {
  const double v = log_of(binomial_exact(p.n(), p.m())) - log_of(binomial_exact(p.n() - p.k(), p.M()));
  return in_base(v, base);
}

double decohered_typeI(const TypeIRatios& r, LogBase base) {
  const double v = r.k * h(r.xi) - h1(r.xi) * (r.xi * r.k - r.l);
  return in_base(v, base);
}

double decohered_typeII(const TypeIIParams& p, long n, LogBase base) {
  const double bd = p.beta + p.delta;
  if (!(bd > 0.0 && p.beta > 0.0 && p.delta > 0.0)) {
    throw PreconditionViolation("decohered_typeII: requires beta, delta > 0");
  }
  const double t = p.beta / bd;
  const double two_pi = 2.0 * std::numbers::pi;
  double v = static_cast<double>(n) * (h(p.xi) - bd * h(t));
  v += 0.5 * std::log(bd) - 0.5 * std::log(two_pi * p.xi * (1.0 - p.xi)) + 0.5 * std::log(two_pi * t * (1.0 - t));
  return in_base(v, base);
}

double zmy_gap(const TypeIIParams& p, LogBase base) {
  const double bd = p.beta + p.delta;
  const double tail = bd > 0.0 ? bd * h(p.beta / bd) : 0.0;
  return in_base(h(p.mu) - (h(p.xi) - tail), base);
}

// ---- CLT diagnostics -----------------------------------------------------------

CltReport clt_empirical_check(const std::vector<Params>& sequence, const TypeIIParams& ratios,
                              double tail_eps) {
  if (!ratios.sigma2 || !ratios.phi || *ratios.sigma2 <= 0.0) {
    throw PreconditionViolation("clt_empirical_check: ratios outside the Gaussian regime");
  }
  const double sigma = std::sqrt(*ratios.sigma2);
  CltReport rep{{}, tail_eps, kNaN};

  for (const Params& p : sequence) {
    const Pmf dist = pmf_closed_kl(p);
    const double nn = p.n();
    const double center = nn * ratios.mu;
    const double scale = std::sqrt(nn) * sigma;

    double mean = 0.0;
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) mean += x * dist.prob(x);
    double var = 0.0;
    double tail = 0.0;
    double sup = 0.0;
    double cdf = 0.0;
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
      const double px = dist.prob(x);
      var += (x - mean) * (x - mean) * px;
      if (std::fabs(x / nn - ratios.mu) >= tail_eps) tail += px;
      const double g = gaussian_cdf((x - center) / scale);
      sup = std::max(sup, std::fabs(cdf - g));
      cdf += px;
      sup = std::max(sup, std::fabs(cdf - g));
    }

    CltRow row{p.n(), sup, std::fabs(mean - (center + *ratios.phi)), std::fabs(var / nn - *ratios.sigma2), tail,
               kNaN};
    if (!rep.rows.empty() && tail > 0.0 && rep.rows.back().tail_prob > 0.0) {
      const CltRow& prev = rep.rows.back();
      row.tail_log_slope = (std::log(tail) - std::log(prev.tail_prob)) / static_cast<double>(row.n - prev.n);
    }
    rep.rows.push_back(row);
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const auto& r : rep.rows) {
    if (!(r.tail_prob > 0.0)) continue;
    const double x = static_cast<double>(r.n), y = std::log(r.tail_prob);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) rep.tail_log_slope_fit = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return rep;
}

}  // namespace asymq
