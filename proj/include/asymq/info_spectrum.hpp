#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "asymq/numeric.hpp"
#include "asymq/schur_weyl.hpp"

namespace asymq {

inline constexpr int kMaxDensityDim = 64;

class DensityMatrix {
 public:
  using Matrix = Eigen::MatrixXcd;

  // Throws DomainError unless the matrix is Hermitian, PSD and of unit trace
  // (all within 1e-12), or ResourceCapExceeded above kMaxDensityDim.
  explicit DensityMatrix(Matrix m);

  static DensityMatrix diagonal(const std::vector<double>& p);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  // Ascending.
  Eigen::VectorXd eigenvalues() const;
  bool is_diagonal(double tol = 1e-14) const;
  bool is_pure(double tol = 1e-10) const;

 private:
  Matrix m_;
};

// Classical-quantum ensemble x -> W_x with prior P.
class CqEnsemble {
 public:
  CqEnsemble(std::vector<DensityMatrix> states, std::vector<double> prior);
  static CqEnsemble uniform(std::vector<DensityMatrix> states);

  const std::vector<DensityMatrix>& states() const { return states_; }
  const std::vector<double>& prior() const { return prior_; }

  // W_P = sum_x P(x) W_x
  DensityMatrix average() const;
  // R[P] = sum_x P(x) |x><x| (x) W_x
  DensityMatrix joint() const;
  // S[P, rho] = sum_x P(x) |x><x| (x) rho
  DensityMatrix product_with(const DensityMatrix& rho) const;

 private:
  std::vector<DensityMatrix> states_;
  std::vector<double> prior_;
};

// True when [rho, sigma] vanishes within tol.
bool commuting(const DensityMatrix& rho, const DensityMatrix& sigma, double tol = 1e-12);

// sup{lambda : tr rho {rho <= e^lambda sigma} <= delta}; +inf when the
// condition holds for every lambda.
double ds_delta(const DensityMatrix& rho, const DensityMatrix& sigma, double delta,
                LogBase base = LogBase::e);

// -log min{tr Q sigma : 0 <= Q <= I, tr Q rho >= 1 - eps}; +inf when the
// minimum is 0.
double dh_epsilon(const DensityMatrix& rho, const DensityMatrix& sigma, double eps,
                  LogBase base = LogBase::e);

// sup{lambda : tr rho {rho >= e^-lambda} <= eps}.
double hs_epsilon(const DensityMatrix& rho, double eps, LogBase base = LogBase::e);

// Same threshold on an explicit spectrum: (eigenvalue, total mass carried by
// that eigenvalue) pairs.
double hs_epsilon_spectrum(const std::vector<std::pair<double, double>>& atoms, double eps,
                           LogBase base = LogBase::e);

struct LogMBounds {
  double lower;
  double upper;
};

// Lower: H_s^{eps - d1 - d2}(W_P) - log(1/(d1 d2)).
// Upper: H_s^{eps + d1 + 2 d2}(W_P) + log(1/(d1 d2^2)).
LogMBounds m_bounds(const CqEnsemble& ens, double eps, double delta1, double delta2,
                    LogBase base = LogBase::e);
// Permutation orbit of the state for `p`; W_P is the averaged state.
LogMBounds m_bounds(const Params& p, double eps, double delta1, double delta2,
                    LogBase base = LogBase::e);

// log j + log(w / v)
double nxu_logM(long v, long w, long j, LogBase base = LogBase::e);

struct Ll3Report {
  double ds_eps;
  double dh_eps;
  double ds_eps_delta_minus_log_delta;
  bool lower_holds;
  bool upper_holds;
  bool holds() const { return lower_holds && upper_holds; }
};

// D_s^eps <= D_H^eps <= D_s^{eps + delta} - log delta, with 1e-9 slack.
Ll3Report ll3_chain_check(const DensityMatrix& rho, const DensityMatrix& sigma, double eps, double delta);

}  // namespace asymq
