#pragma once

#include <optional>
#include <vector>

#include "asymq/numeric.hpp"
#include "asymq/schur_weyl.hpp"

namespace asymq {

// ---- Type I: k, l fixed, m = xi * n -----------------------------------------

struct TypeIRatios {
  double xi;
  int k;
  int l;

  // Throws ConstraintViolation unless 0 <= xi <= 1 and 0 <= l <= k.
  static TypeIRatios make(double xi, int k, int l);
};

// pmf of B_{xi,k-l} * B_{1-xi,l} on x = 0..k.
std::vector<double> typeI_q_pmf(const TypeIRatios& r);

// (k - l) xi + l (1 - xi)
double typeI_expectation(const TypeIRatios& r);

struct TypeIEntropyApprox {
  double value;
  // k == l == 0: q is a point mass at 0 and the expansion carries no log n term.
  bool degenerate;
};

// u log n + u - log sqrt(2 pi) - sum_x q(x) ((x + 1/2) log x + log q(x)),
// with the x = 0 log term read as 0.
TypeIEntropyApprox typeI_entropy_approx(long n, const TypeIRatios& r, LogBase base = LogBase::e);

// F^{-1}(eps) log n with F the cdf of typeI_q_pmf.
double typeI_logM(long n, const TypeIRatios& r, double eps, LogBase base = LogBase::e);

// ---- Type II: m, k, l all linear in n ---------------------------------------

struct TypeIIParams {
  double alpha, beta, gamma, delta;
  double xi;     // alpha + beta
  double kappa;  // alpha + gamma
  double D;      // 4 beta delta + (2 xi - 1)^2
  double mu;     // (1 - sqrt D) / 2
  double nu;     // (1 + sqrt D) / 2
  std::optional<double> sigma2;  // (1 - beta - delta) beta delta / D, when D > 0
  std::optional<double> phi;     // (sigma^2 - mu) / (1 - 2 mu), when mu != 1/2

  // alpha + gamma > 0 and beta, delta > 0: the regime of the Gaussian limit.
  bool clt_regime() const;
  // beta * delta == 0: the averaged state is a uniform mixture of one weight class.
  bool degenerate_mixture() const;
  // alpha + gamma == 0: the state is a plain Dicke state.
  bool no_attached_block() const;
};

// Fixed-ratio set 3.
TypeIIParams typeII_params(double beta, double delta, double xi);
// Fixed-ratio set 1.
TypeIIParams typeII_from_ratios(double alpha, double beta, double gamma, double delta);
// Ratios of an integer tuple.
TypeIIParams typeII_from_params(const Params& p);
// alpha = xi kappa, beta = xi (1 - kappa), gamma = (1 - xi) kappa, delta = (1 - xi)(1 - kappa).
TypeIIParams nma_slice(double xi, double kappa);

// Integer tuple (n, xi n, alpha n, alpha n) on the gamma = 0 slice. Ratios
// are rounded to the nearest integer counts.
Params kl_slice_params(long n, double alpha, double xi);

struct BranchValue {
  double value;
  // False when the Type II Gaussian assumption fails and the degenerate
  // formulas apply instead.
  bool assumption_holds;
};

// n h(mu)
BranchValue typeII_entropy_leading(const TypeIIParams& p, long n, LogBase base = LogBase::e);

struct RefinedConstants {
  double c1, c2, c3, c4, c5, c6;
  // C2 exactly as printed in the source expansion; differs from c2 by
  // 1/2 log[(mu/alpha)(1 - mu/alpha) / ((mu/xi)(1 - mu/xi))].
  double c2_as_printed;
  double sigma2, phi;
  LogBase base;

  double c0() const { return c2 + c3 * phi + c4 * sigma2; }
  // n C1 + C0
  double prediction(long n) const { return static_cast<double>(n) * c1 + c0(); }
  double prediction_as_printed(long n) const {
    return static_cast<double>(n) * c1 + c2_as_printed + c3 * phi + c4 * sigma2;
  }
};

// Requires gamma == 0, 0 < xi <= 1/2 and alpha, beta, delta > 0.
RefinedConstants typeII_refined_constants(const TypeIIParams& p, LogBase base = LogBase::e);

// Right side of the z-expansion of log dim V - log p(x) (printed form),
// z = x - n mu, as a function of real z. Used to cross-check C3..C6.
double refined_expansion_exact_form(const TypeIIParams& p, long n, double z,
                                    LogBase base = LogBase::e);

// n h(mu) + sqrt(n) h'(mu) Phi^{-1}(eps) / sigma
double typeII_logM(const TypeIIParams& p, long n, double eps, LogBase base = LogBase::e);

// ---- Decohered baselines -----------------------------------------------------

// log C(n, m) - log C(n - k, m - l), exact big-integer logs.
double decohered_asymmetry(const Params& p, LogBase base = LogBase::e);

// k h(xi) - h'(xi) (xi k - l)
double decohered_typeI(const TypeIRatios& r, LogBase base = LogBase::e);

// n (h(xi) - (beta + delta) h(beta/(beta + delta))) + 1/2 log(beta + delta)
//   - 1/2 log(2 pi xi (1 - xi)) + 1/2 log(2 pi t (1 - t)),  t = beta/(beta + delta)
double decohered_typeII(const TypeIIParams& p, long n, LogBase base = LogBase::e);

// h(mu) - [h(xi) - (beta + delta) h(beta/(beta + delta))]; the bracket's
// second term is 0 when beta + delta == 0.
double zmy_gap(const TypeIIParams& p, LogBase base = LogBase::e);

// ---- Gaussian-limit diagnostics on the k == l slice --------------------------

struct CltRow {
  long n;
  double sup_cdf_dist;  // Kolmogorov distance of (X - n mu)/(sqrt(n) sigma) to Phi
  double mean_err;      // |E X - (n mu + phi)|
  double var_err;       // |Var X / n - sigma^2|
  double tail_prob;     // P[|X/n - mu| >= tail_eps]
  double tail_log_slope;  // d log(tail_prob) / dn against the previous row; NaN on the first
};

struct CltReport {
  std::vector<CltRow> rows;
  double tail_eps;
  // Least-squares slope of log(tail_prob) over n.
  double tail_log_slope_fit;
};

// Each Params must satisfy k == l and m <= n - m; `ratios` supplies mu, sigma, phi.
CltReport clt_empirical_check(const std::vector<Params>& sequence, const TypeIIParams& ratios,
                              double tail_eps = 0.05);

}  // namespace asymq
