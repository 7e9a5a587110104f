#pragma once

#include "asymq/numeric.hpp"
#include "asymq/schur_weyl.hpp"

namespace asymq {

struct ActivationReport {
  double asym_whole;
  double asym_added;
  double activation;  // asym_whole - asym_added
  LogBase base;
};

// Attaching the Dicke block to the k-qubit string: the string alone carries
// log C(k, l); the whole is the coherent averaged entropy or its decohered
// counterpart.
ActivationReport permutation_activation(const Params& p, bool coherent, LogBase base = LogBase::e);

// log C(nd + n - 1, n) - log C(d, n)
double antisym_activation_binomial(long n, long d, LogBase base = LogBase::e);
// sum_{j=0}^{n-1} log(n + (n - 1)(j + 1)/(d - j))
double antisym_activation_sum(long n, long d, LogBase base = LogBase::e);

// Binomial form; throws DomainError unless d >= n >= 1, and
// PreconditionViolation if the two forms disagree beyond 1e-10.
double antisym_activation(long n, long d, LogBase base = LogBase::e);

struct OptimalD {
  long d;
  double value;
};

// Argmax of antisym_activation over d in [n, max(4n, 50)].
OptimalD antisym_optimal_d(long n, LogBase base = LogBase::e);

}  // namespace asymq
