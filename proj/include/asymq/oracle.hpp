#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "asymq/numeric.hpp"
#include "asymq/schur_weyl.hpp"

namespace asymq::oracle {

inline constexpr int kMaxStateQubits = 14;
inline constexpr int kMaxAveragingQubits = 8;

// Real amplitudes over (C^2)^{\otimes n}. Qubit 0 is the most significant
// bit of the basis index.
struct DenseState {
  int n = 0;
  std::vector<double> amplitudes;

  double norm() const;
};

// |1^l 0^{k-l}> (x) |Dicke(N+M, M)>.
DenseState build_state(const Params& p);

// (J^2 v) computed as J_- J_+ v + J_z (J_z + 1) v, matrix-free.
std::vector<double> apply_total_spin_squared(int n, const std::vector<double>& v);

// ||P_J psi||^2 for J = n/2 - x, x = 0..floor(n/2), with each P_J built as the
// Lagrange product over the other eigenvalues j'(j'+1) of J^2.
std::vector<double> pmf_oracle(const Params& p);

// (1/n!) sum_g pi(g) |psi><psi| pi(g)^T, enumerating S_n explicitly.
Eigen::MatrixXd avg_state_oracle(const Params& p);

// Applies the permutation sending tensor factor i to position perm[i].
std::vector<double> permute_factors(int n, const std::vector<double>& v, const std::vector<int>& perm);
// Dense matrix of the transposition (i j) on n qubits.
Eigen::MatrixXd transposition_matrix(int n, int i, int j);

double entropy_oracle(const Params& p, LogBase base = LogBase::e);
// Eigenvalues of the averaged state, ascending.
Eigen::VectorXd avg_state_eigenvalues(const Params& p);

}  // namespace asymq::oracle
