#pragma once

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "asymq/numeric.hpp"

namespace asymq {

// (n, m, k, l): n qubits, m ones in total, a k-qubit bit-string block
// holding l ones, followed by a Dicke state on the remaining N + M qubits.
class Params {
 public:
  int n() const { return n_; }
  int m() const { return m_; }
  int k() const { return k_; }
  int l() const { return l_; }

  int M() const { return m_ - l_; }
  int N() const { return n_ - m_ - k_ + l_; }
  int K() const { return k_ - l_; }
  int L() const { return l_; }

  // (n, n - m, k, k - l), the 0 <-> 1 relabelled tuple.
  Params flipped() const;

  friend bool operator==(const Params&, const Params&) = default;

 private:
  friend Params validate_params(long n, long m, long k, long l);
  Params(int n, int m, int k, int l) : n_(n), m_(m), k_(k), l_(l) {}

  int n_, m_, k_, l_;
};

std::ostream& operator<<(std::ostream& os, const Params& p);

// Throws ConstraintViolation naming the first failed inequality.
Params validate_params(long n, long m, long k, long l);

// Every admissible tuple with the given n, in (m, k, l) lexicographic order.
std::vector<Params> enumerate_params(int n);

// Largest n handled by the exact-rational paths; ASYMQ_MAX_N overrides.
long max_exact_n();
// Attached-block size up to which the exact coupling path ignores the n cap.
inline constexpr int kSmallBlockK = 16;
bool exact_coupling_allowed(const Params& p);

// dim V_{(n-x,x)} = C(n,x) - C(n,x-1).
BigInt dim_irrep(long n, long x);
// Same value through C(n,x)(n-2x+1)/(n-x+1).
BigInt dim_irrep_hook_ratio(long n, long x);
double log_dim_irrep(long n, long x);

// Spin quantum number stored as twice its value, so 1/2 -> 1.
struct Spin {
  int twice = 0;
  static constexpr Spin from_twice(int t) { return Spin{t}; }
  static constexpr Spin whole(int v) { return Spin{2 * v}; }
  friend constexpr bool operator==(Spin, Spin) = default;
};

// |<j1 m1; j2 m2 | J M>|^2 by the Racah sum, exact. Zero when a selection
// rule fails.
BigRational cg_squared(Spin j1, Spin m1, Spin j2, Spin m2, Spin J, Spin M);

// Distribution of the Schur-Weyl outcome x, stored on [x_min, x_max].
// Exact masses are present on the rational path; probabilities and log
// probabilities are always filled (log is -inf on zero mass).
class Pmf {
 public:
  Pmf(int x_min, std::vector<BigRational> masses);
  static Pmf from_log_probs(int x_min, std::vector<double> log_probs);

  int x_min() const { return x_min_; }
  int x_max() const { return x_min_ + static_cast<int>(prob_.size()) - 1; }
  bool is_exact() const { return exact_.has_value(); }

  double prob(int x) const;
  double log_prob(int x) const;
  // Zero outside the stored range; throws on a float-only pmf.
  BigRational exact(int x) const;

  const std::vector<double>& probs() const { return prob_; }
  BigRational exact_total() const;
  double total() const;

 private:
  Pmf() = default;
  int x_min_ = 0;
  std::optional<std::vector<BigRational>> exact_;
  std::vector<double> prob_;
  std::vector<double> log_prob_;
};

// p(x | n,m,k,l) through three-spin coupling: the l-ones block (spin l/2,
// lowest weight), the (k-l)-zeros block (spin (k-l)/2, highest weight),
// and the Dicke block (spin (N+M)/2, weight (N-M)/2).
Pmf pmf(const Params& p);

enum class Arithmetic { exact, floating, automatic };

// Product-of-binomials form valid for k == l and m <= n - m.
Pmf pmf_closed_kl(const Params& p, Arithmetic mode = Arithmetic::automatic);

// Picks the closed form where it applies (and exact coupling otherwise).
Pmf pmf_auto(const Params& p);

std::pair<Pmf, Pmf> pmf_symmetry_pair(const Params& p);

struct SpectrumBlock {
  int x;
  BigRational eigenvalue;  // zero on the float path
  double eigenvalue_float;
  BigInt multiplicity;
};

struct AvgSpectrum {
  std::vector<SpectrumBlock> blocks;
  // sum eigenvalue * multiplicity, exact when every block is exact.
  BigRational exact_trace() const;
};

AvgSpectrum avg_spectrum(const Params& p);

double avg_entropy(const Pmf& dist, int n, LogBase base = LogBase::e);
double avg_entropy(const Params& p, LogBase base = LogBase::e);

// Supremum of a threshold set that may not be attained on a discrete
// spectrum; `open_endpoint` marks a supremum that is not a maximum.
struct ThresholdValue {
  double value = 0.0;
  bool open_endpoint = false;
};

ThresholdValue hs_epsilon_avg(const Pmf& dist, int n, double eps, LogBase base = LogBase::e);
ThresholdValue hs_epsilon_avg(const Params& p, double eps, LogBase base = LogBase::e);

// Smallest x with F(x) >= eps.
int pmf_quantile(const Pmf& dist, double eps);

// `x, p_num, p_den, p_float` or `x, p_float`.
void write_pmf_csv(std::ostream& os, const Pmf& dist);

}  // namespace asymq
