#include "asymq/info_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "asymq/errors.hpp"

namespace asymq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-12;

using Matrix = DensityMatrix::Matrix;

void require_unit_interval(double v, const char* who, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) throw DomainError(std::string(who) + ": " + name + " must lie in [0,1)");
}

Eigen::SelfAdjointEigenSolver<Matrix> eig(const Matrix& m) { return Eigen::SelfAdjointEigenSolver<Matrix>(m); }

// Joint eigenbasis of a commuting pair: (p_i, q_i) diagonal entries.
std::vector<std::pair<double, double>> joint_spectrum(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const int d = rho.dim();
  std::vector<std::pair<double, double>> out(static_cast<size_t>(d));
  if (rho.is_diagonal() && sigma.is_diagonal()) {
    for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = {rho.matrix()(i, i).real(), sigma.matrix()(i, i).real()};
    return out;
  }
  // A generic combination separates the joint eigenspaces.
  const Matrix mix = rho.matrix() + 0.6180339887498949 * sigma.matrix();
  const Matrix v = eig(mix).eigenvectors();
  for (int i = 0; i < d; ++i) {
    const auto col = v.col(i);
    out[static_cast<size_t>(i)] = {(col.adjoint() * rho.matrix() * col)(0, 0).real(),
                                   (col.adjoint() * sigma.matrix() * col)(0, 0).real()};
  }
  return out;
}

// tr rho {rho - t sigma <= 0}
double nonpositive_mass(const DensityMatrix& rho, const DensityMatrix& sigma, double t) {
  const Matrix diff = rho.matrix() - t * sigma.matrix();
  const auto es = eig(diff);
  const double scale = std::max(1.0, t);
  double mass = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    if (es.eigenvalues()(i) <= kTol * scale) {
      const auto col = es.eigenvectors().col(i);
      mass += (col.adjoint() * rho.matrix() * col)(0, 0).real();
    }
  }
  return mass;
}

// tr (A)_+ for Hermitian A.
double positive_part_trace(const Matrix& a) {
  const auto ev = eig(a).eigenvalues();
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i) s += std::max(0.0, ev(i));
  return s;
}

Matrix support_projector(const Matrix& m) {
  const auto es = eig(m);
  Matrix proj = Matrix::Zero(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    if (es.eigenvalues()(i) > kTol) proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return proj;
}

double ds_commuting(const DensityMatrix& rho, const DensityMatrix& sigma, double delta) {
  struct Atom {
    double llr;
    double mass;
  };
  std::vector<Atom> atoms;
  for (auto [p, q] : joint_spectrum(rho, sigma)) {
    if (p <= kTol) continue;
    if (q <= kTol) continue;  // never inside {rho <= e^lambda sigma}
    atoms.push_back({std::log(p / q), p});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.llr < b.llr; });
  double cum = 0.0;
  size_t i = 0;
  while (i < atoms.size()) {
    const double v = atoms[i].llr;
    while (i < atoms.size() && atoms[i].llr - v <= 1e-12 * std::max(1.0, std::fabs(v))) cum += atoms[i++].mass;
    if (cum > delta) return v;
  }
  return kInf;
}

double ds_general(const DensityMatrix& rho, const DensityMatrix& sigma, double delta) {
  // Generalized eigenvalues on supp sigma bound the interesting range of lambda.
  const auto es = eig(sigma.matrix());
  Matrix inv_sqrt = Matrix::Zero(sigma.dim(), sigma.dim());
  for (int i = 0; i < sigma.dim(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > kTol) inv_sqrt += (1.0 / std::sqrt(ev)) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  const auto gen = eig(inv_sqrt * rho.matrix() * inv_sqrt).eigenvalues();
  double lo = kInf, hi = -kInf;
  for (int i = 0; i < gen.size(); ++i) {
    if (gen(i) > kTol) {
      lo = std::min(lo, std::log(gen(i)));
      hi = std::max(hi, std::log(gen(i)));
    }
  }
  if (!std::isfinite(lo)) return kInf;
  lo -= 1.0;
  hi += 1.0;
  auto g = [&](double lam) { return nonpositive_mass(rho, sigma, std::exp(lam)); };
  for (int guard = 0; guard < 60 && g(lo) > delta; ++guard) lo -= 2.0 * (hi - lo);

  constexpr int kSteps = 2000;
  double prev = lo;
  for (int s = 1; s <= kSteps; ++s) {
    const double lam = lo + (hi - lo) * s / kSteps;
    if (g(lam) > delta) {
      double a = prev, b = lam;
      for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
        const double mid = 0.5 * (a + b);
        (g(mid) > delta ? b : a) = mid;
      }
      return b;
    }
    prev = lam;
  }
  return kInf;
}

double dh_commuting(const DensityMatrix& rho, const DensityMatrix& sigma, double eps) {
  struct Item {
    double p, q;
  };
  std::vector<Item> items;
  for (auto [p, q] : joint_spectrum(rho, sigma)) {
    if (p > kTol) items.push_back({p, std::max(q, 0.0)});
  }
  // Neyman-Pearson: largest likelihood ratio first.
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.p * b.q > b.p * a.q; });
  double need = 1.0 - eps;
  double beta = 0.0;
  for (const auto& it : items) {
    if (need <= 0.0) break;
    const double w = std::min(1.0, need / it.p);
    if (it.q > kTol) beta += w * it.q;
    need -= w * it.p;
  }
  return beta > 0.0 ? -std::log(beta) : kInf;
}

double dh_general(const DensityMatrix& rho, const DensityMatrix& sigma, double eps) {
  if (eps == 0.0) {
    const double beta = (support_projector(rho.matrix()) * sigma.matrix()).trace().real();
    return beta > kTol ? -std::log(beta) : kInf;
  }
  // A test supported on ker sigma costs nothing.
  const Matrix ker = Matrix::Identity(sigma.dim(), sigma.dim()) - support_projector(sigma.matrix());
  if ((ker * rho.matrix()).trace().real() >= 1.0 - eps - kTol) return kInf;

  // Dual: beta = max_t t(1 - eps) - tr(t rho - sigma)_+, concave in t.
  auto f = [&](double t) { return t * (1.0 - eps) - positive_part_trace(t * rho.matrix() - sigma.matrix()); };
  double hi = 1.0;
  while (f(2.0 * hi) > f(hi) && hi < 1e15) hi *= 2.0;
  double a = 0.0, b = 2.0 * hi;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && b - a > 1e-10 * std::max(1.0, b); ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    }
  }
  const double beta = std::max(fc, fd);
  return beta > 0.0 ? -std::log(beta) : kInf;
}

}  // namespace

// ---- DensityMatrix -----------------------------------------------------------

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw DomainError("DensityMatrix: not a square matrix");
  if (m_.rows() > kMaxDensityDim) {
    throw ResourceCapExceeded("DensityMatrix: dim " + std::to_string(m_.rows()) + " exceeds " +
                              std::to_string(kMaxDensityDim));
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kTol) throw DomainError("DensityMatrix: not Hermitian");
  if (std::fabs(m_.trace().real() - 1.0) > kTol) throw DomainError("DensityMatrix: trace != 1");
  // Symmetrize away rounding before the eigensolve.
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
  if (eigenvalues()(0) < -kTol) throw DomainError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& p) {
  Matrix m = Matrix::Zero(static_cast<long>(p.size()), static_cast<long>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(static_cast<long>(i), static_cast<long>(i)) = p[i];
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
  const Eigen::VectorXcd u = psi / nrm;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw DomainError("DensityMatrix::maximally_mixed: dim >= 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const { return eig(m_).eigenvalues(); }

bool DensityMatrix::is_diagonal(double tol) const {
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      if (i != j && std::abs(m_(i, j)) > tol) return false;
    }
  }
  return true;
}

bool DensityMatrix::is_pure(double tol) const { return std::fabs((m_ * m_).trace().real() - 1.0) <= tol; }

// ---- CqEnsemble ----------------------------------------------------------------

CqEnsemble::CqEnsemble(std::vector<DensityMatrix> states, std::vector<double> prior)
    : states_(std::move(states)), prior_(std::move(prior)) {
  if (states_.empty()) throw DomainError("CqEnsemble: no states");
  if (states_.size() != prior_.size()) throw DomainError("CqEnsemble: prior size mismatch");
  double s = 0.0;
  for (double p : prior_) {
    if (p < 0.0) throw DomainError("CqEnsemble: negative prior weight");
    s += p;
  }
  if (std::fabs(s - 1.0) > kTol) throw DomainError("CqEnsemble: prior does not sum to 1");
  for (const auto& w : states_) {
    if (w.dim() != states_.front().dim()) throw DomainError("CqEnsemble: states differ in dimension");
  }
}

CqEnsemble CqEnsemble::uniform(std::vector<DensityMatrix> states) {
  std::vector<double> prior(states.size(), 1.0 / static_cast<double>(states.size()));
  return CqEnsemble(std::move(states), std::move(prior));
}

DensityMatrix CqEnsemble::average() const {
  const int d = states_.front().dim();
  Matrix acc = Matrix::Zero(d, d);
  for (size_t x = 0; x < states_.size(); ++x) acc += prior_[x] * states_[x].matrix();
  acc /= acc.trace().real();
  return DensityMatrix(std::move(acc));
}

DensityMatrix CqEnsemble::joint() const {
  const long d = states_.front().dim();
  const long nx = static_cast<long>(states_.size());
  Matrix acc = Matrix::Zero(nx * d, nx * d);
  for (long x = 0; x < nx; ++x) acc.block(x * d, x * d, d, d) = prior_[static_cast<size_t>(x)] * states_[static_cast<size_t>(x)].matrix();
  return DensityMatrix(std::move(acc));
}

DensityMatrix CqEnsemble::product_with(const DensityMatrix& rho) const {
  const long d = rho.dim();
  const long nx = static_cast<long>(states_.size());
  Matrix acc = Matrix::Zero(nx * d, nx * d);
  for (long x = 0; x < nx; ++x) acc.block(x * d, x * d, d, d) = prior_[static_cast<size_t>(x)] * rho.matrix();
  return DensityMatrix(std::move(acc));
}

// ---- Quantities ------------------------------------------------------------------

bool commuting(const DensityMatrix& rho, const DensityMatrix& sigma, double tol) {
  if (rho.dim() != sigma.dim()) throw DomainError("commuting: dimension mismatch");
  const Matrix c = rho.matrix() * sigma.matrix() - sigma.matrix() * rho.matrix();
  return c.cwiseAbs().maxCoeff() <= tol;
}

double ds_delta(const DensityMatrix& rho, const DensityMatrix& sigma, double delta, LogBase base) {
  require_unit_interval(delta, "ds_delta", "delta");
  if (rho.dim() != sigma.dim()) throw DomainError("ds_delta: dimension mismatch");
  const double v = commuting(rho, sigma) ? ds_commuting(rho, sigma, delta) : ds_general(rho, sigma, delta);
  return std::isfinite(v) ? in_base(v, base) : v;
}

double dh_epsilon(const DensityMatrix& rho, const DensityMatrix& sigma, double eps, LogBase base) {
  require_unit_interval(eps, "dh_epsilon", "eps");
  if (rho.dim() != sigma.dim()) throw DomainError("dh_epsilon: dimension mismatch");
  const double v = commuting(rho, sigma) ? dh_commuting(rho, sigma, eps) : dh_general(rho, sigma, eps);
  return std::isfinite(v) ? in_base(v, base) : v;
}

double hs_epsilon_spectrum(const std::vector<std::pair<double, double>>& atoms, double eps, LogBase base) {
  require_unit_interval(eps, "hs_epsilon", "eps");
  std::vector<std::pair<double, double>> vals;
  for (auto [lam, mass] : atoms) {
    if (lam > kTol && mass > 0.0) vals.emplace_back(-std::log(lam), mass);
  }
  if (vals.empty()) throw DomainError("hs_epsilon: empty spectrum");
  std::sort(vals.begin(), vals.end());
  double cum = 0.0;
  size_t i = 0;
  while (i < vals.size()) {
    const double v = vals[i].first;
    while (i < vals.size() && vals[i].first - v <= 1e-12 * std::max(1.0, std::fabs(v))) cum += vals[i++].second;
    if (cum > eps) return in_base(v, base);
  }
  return in_base(vals.back().first, base);
}

double hs_epsilon(const DensityMatrix& rho, double eps, LogBase base) {
  const auto ev = rho.eigenvalues();
  std::vector<std::pair<double, double>> atoms;
  for (int i = 0; i < ev.size(); ++i) atoms.emplace_back(ev(i), ev(i));
  return hs_epsilon_spectrum(atoms, eps, base);
}

namespace {

void check_slack(double eps, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) throw PreconditionViolation("m_bounds: requires delta1, delta2 > 0");
  if (!(eps - d1 - d2 > 0.0)) throw PreconditionViolation("m_bounds: requires eps - delta1 - delta2 > 0");
  if (!(eps + d1 + 2.0 * d2 < 1.0)) throw PreconditionViolation("m_bounds: requires eps + delta1 + 2 delta2 < 1");
}

}  // namespace

LogMBounds m_bounds(const CqEnsemble& ens, double eps, double delta1, double delta2, LogBase base) {
  check_slack(eps, delta1, delta2);
  for (const auto& w : ens.states()) {
    if (!w.is_pure()) throw PreconditionViolation("m_bounds: ensemble states must be pure");
  }
  const DensityMatrix avg = ens.average();
  const double lo = hs_epsilon(avg, eps - delta1 - delta2) - std::log(1.0 / (delta1 * delta2));
  const double hi = hs_epsilon(avg, eps + delta1 + 2.0 * delta2) + std::log(1.0 / (delta1 * delta2 * delta2));
  return {in_base(lo, base), in_base(hi, base)};
}

LogMBounds m_bounds(const Params& p, double eps, double delta1, double delta2, LogBase base) {
  check_slack(eps, delta1, delta2);
  const Pmf dist = pmf_auto(p);
  const double lo = hs_epsilon_avg(dist, p.n(), eps - delta1 - delta2).value - std::log(1.0 / (delta1 * delta2));
  const double hi =
      hs_epsilon_avg(dist, p.n(), eps + delta1 + 2.0 * delta2).value + std::log(1.0 / (delta1 * delta2 * delta2));
  return {in_base(lo, base), in_base(hi, base)};
}

double nxu_logM(long v, long w, long j, LogBase base) {
  if (v < 1 || w < v) throw PreconditionViolation("nxu_logM: requires w >= v >= 1");
  if (j < 1) throw PreconditionViolation("nxu_logM: requires j >= 1");
  if (w % v != 0) throw PreconditionViolation("nxu_logM: v must divide w");
  return in_base(std::log(static_cast<double>(j)) + std::log(static_cast<double>(w) / static_cast<double>(v)), base);
}

Ll3Report ll3_chain_check(const DensityMatrix& rho, const DensityMatrix& sigma, double eps, double delta) {
  if (!(eps >= 0.0 && delta > 0.0 && eps + delta < 1.0)) {
    throw PreconditionViolation("ll3_chain_check: requires eps >= 0, delta > 0, eps + delta < 1");
  }
  Ll3Report r{};
  r.ds_eps = ds_delta(rho, sigma, eps);
  r.dh_eps = dh_epsilon(rho, sigma, eps);
  r.ds_eps_delta_minus_log_delta = ds_delta(rho, sigma, eps + delta) - std::log(delta);
  constexpr double slack = 1e-9;
  r.lower_holds = r.ds_eps <= r.dh_eps + slack || (std::isinf(r.ds_eps) && std::isinf(r.dh_eps));
  r.upper_holds = r.dh_eps <= r.ds_eps_delta_minus_log_delta + slack || std::isinf(r.ds_eps_delta_minus_log_delta);
  return r;
}

}  // namespace asymq
