#include "asymq/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "asymq/errors.hpp"

namespace asymq::oracle {

namespace {

void check_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw ResourceCapExceeded(std::string(what) + ": n = " + std::to_string(n) +
                              " exceeds the dense cap " + std::to_string(cap));
  }
}

int bit_of(uint64_t index, int n, int qubit) { return static_cast<int>((index >> (n - 1 - qubit)) & 1u); }

}  // namespace

double DenseState::norm() const {
  double s = 0.0;
  for (double a : amplitudes) s += a * a;
  return std::sqrt(s);
}

DenseState build_state(const Params& p) {
  check_cap(p.n(), kMaxStateQubits, "build_state");
  const int n = p.n();
  const int tail = p.N() + p.M();
  DenseState out{n, std::vector<double>(size_t{1} << n, 0.0)};

  uint64_t head = 0;
  for (int q = 0; q < p.k(); ++q) head = (head << 1) | (q < p.l() ? 1u : 0u);

  // Dicke block: every weight-M string on the last N+M qubits.
  std::vector<uint64_t> tails;
  for (uint64_t t = 0; t < (uint64_t{1} << tail); ++t) {
    if (std::popcount(t) == p.M()) tails.push_back(t);
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(tails.size()));
  for (uint64_t t : tails) out.amplitudes[(head << tail) | t] = amp;
  return out;
}

std::vector<double> apply_total_spin_squared(int n, const std::vector<double>& v) {
  const size_t dim = size_t{1} << n;
  // |0> carries s_z = +1/2, |1> carries -1/2; s_+ maps |1> -> |0>.
  std::vector<double> raised(dim, 0.0);
  for (size_t idx = 0; idx < dim; ++idx) {
    if (v[idx] == 0.0) continue;
    for (int q = 0; q < n; ++q) {
      if (bit_of(idx, n, q) == 1) raised[idx & ~(size_t{1} << (n - 1 - q))] += v[idx];
    }
  }
  std::vector<double> out(dim, 0.0);
  for (size_t idx = 0; idx < dim; ++idx) {
    if (raised[idx] == 0.0) continue;
    for (int q = 0; q < n; ++q) {
      if (bit_of(idx, n, q) == 0) out[idx | (size_t{1} << (n - 1 - q))] += raised[idx];
    }
  }
  for (size_t idx = 0; idx < dim; ++idx) {
    const double jz = 0.5 * (n - 2 * std::popcount(idx));
    out[idx] += jz * (jz + 1.0) * v[idx];
  }
  return out;
}

std::vector<double> pmf_oracle(const Params& p) {
  check_cap(p.n(), kMaxStateQubits, "pmf_oracle");
  const int n = p.n();
  const DenseState psi = build_state(p);
  const int x_count = n / 2 + 1;
  auto casimir = [n](int x) {
    const double j = 0.5 * n - x;
    return j * (j + 1.0);
  };

  std::vector<double> out(static_cast<size_t>(x_count), 0.0);
  for (int x = 0; x < x_count; ++x) {
    std::vector<double> v = psi.amplitudes;
    for (int other = 0; other < x_count; ++other) {
      if (other == x) continue;
      std::vector<double> jv = apply_total_spin_squared(n, v);
      const double c = casimir(other);
      const double scale = 1.0 / (casimir(x) - c);
      for (size_t i = 0; i < v.size(); ++i) v[i] = (jv[i] - c * v[i]) * scale;
    }
    double s = 0.0;
    for (double a : v) s += a * a;
    out[static_cast<size_t>(x)] = s;
  }
  return out;
}

std::vector<double> permute_factors(int n, const std::vector<double>& v, const std::vector<int>& perm) {
  std::vector<double> out(v.size(), 0.0);
  for (size_t idx = 0; idx < v.size(); ++idx) {
    if (v[idx] == 0.0) continue;
    size_t target = 0;
    for (int q = 0; q < n; ++q) {
      if (bit_of(idx, n, q)) target |= size_t{1} << (n - 1 - perm[static_cast<size_t>(q)]);
    }
    out[target] += v[idx];
  }
  return out;
}

Eigen::MatrixXd transposition_matrix(int n, int i, int j) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  const size_t dim = size_t{1} << n;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<long>(dim), static_cast<long>(dim));
  std::vector<double> e(dim, 0.0);
  for (size_t c = 0; c < dim; ++c) {
    e[c] = 1.0;
    auto col = permute_factors(n, e, perm);
    for (size_t r = 0; r < dim; ++r) out(static_cast<long>(r), static_cast<long>(c)) = col[r];
    e[c] = 0.0;
  }
  return out;
}

Eigen::MatrixXd avg_state_oracle(const Params& p) {
  check_cap(p.n(), kMaxAveragingQubits, "avg_state_oracle");
  const int n = p.n();
  const DenseState psi = build_state(p);

  // Identical images are grouped before the outer products; every one of the
  // n! permutations is still applied.
  std::map<std::vector<double>, long> images;
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    ++images[permute_factors(n, psi.amplitudes, perm)];
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const long dim = static_cast<long>(psi.amplitudes.size());
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [img, mult] : images) {
    Eigen::Map<const Eigen::VectorXd> vec(img.data(), dim);
    rho.noalias() += (static_cast<double>(mult) / static_cast<double>(count)) * vec * vec.transpose();
  }
  return rho;
}

Eigen::VectorXd avg_state_eigenvalues(const Params& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(avg_state_oracle(p), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entropy_oracle(const Params& p, LogBase base) {
  const Eigen::VectorXd ev = avg_state_eigenvalues(p);
  double s = 0.0;
  for (double lam : ev) {
    if (lam > 1e-15) s -= lam * std::log(lam);
  }
  return in_base(s, base);
}

}  // namespace asymq::oracle
