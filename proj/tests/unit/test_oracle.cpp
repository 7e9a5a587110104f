#include <gtest/gtest.h>

#include <cmath>

#include "asymq/errors.hpp"
#include "asymq/oracle.hpp"
#include "asymq/schur_weyl.hpp"

using namespace asymq;

TEST(DenseState, NormalisedAndSupportedOnWeightClass) {
  for (const Params& p : enumerate_params(6)) {
    const auto s = oracle::build_state(p);
    EXPECT_NEAR(s.norm(), 1.0, 1e-14);
    for (size_t i = 0; i < s.amplitudes.size(); ++i) {
      if (s.amplitudes[i] != 0.0) EXPECT_EQ(__builtin_popcountll(i), p.m());
    }
  }
  EXPECT_THROW(oracle::build_state(validate_params(oracle::kMaxStateQubits + 1, 1, 0, 0)), ResourceCapExceeded);
}

TEST(DenseState, DickeIsTotalSpinEigenvector) {
  for (int n = 1; n <= 8; ++n) {
    for (int m = 0; m <= n; ++m) {
      const auto s = oracle::build_state(validate_params(n, m, 0, 0));
      const auto js = oracle::apply_total_spin_squared(n, s.amplitudes);
      const double j = n / 2.0;
      for (size_t i = 0; i < js.size(); ++i) EXPECT_NEAR(js[i], j * (j + 1) * s.amplitudes[i], 1e-12);
    }
  }
}

TEST(DenseState, TranspositionIsOrthogonalInvolution) {
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Eigen::MatrixXd t = oracle::transposition_matrix(n, i, j);
        const auto id = Eigen::MatrixXd::Identity(t.rows(), t.cols());
        EXPECT_TRUE((t * t).isApprox(id));
        EXPECT_TRUE((t.transpose() * t).isApprox(id));
      }
    }
  }
}

TEST(DenseState, PermuteFactorsMovesBits) {
  // |100> with factor 0 sent to position 2 becomes |001>.
  std::vector<double> v(8, 0.0);
  v[4] = 1.0;
  const auto w = oracle::permute_factors(3, v, {2, 0, 1});
  EXPECT_EQ(w[1], 1.0);
}

TEST(AveragedState, TraceOneAndPermutationInvariant) {
  for (const Params& p : {validate_params(4, 2, 2, 1), validate_params(5, 2, 3, 1), validate_params(5, 3, 2, 2)}) {
    const Eigen::MatrixXd rho = oracle::avg_state_oracle(p);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-13);
    EXPECT_TRUE(rho.isApprox(rho.transpose()));
    for (int i = 0; i + 1 < p.n(); ++i) {
      const Eigen::MatrixXd t = oracle::transposition_matrix(p.n(), i, i + 1);
      EXPECT_LT((t * rho - rho * t).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(AveragedState, EigenvaluesMatchBlockSpectrum) {
  const Params p = validate_params(5, 2, 3, 1);
  const Eigen::VectorXd ev = oracle::avg_state_eigenvalues(p);
  std::vector<double> expected(static_cast<size_t>(ev.size()), 0.0);
  size_t pos = expected.size();
  for (const auto& b : avg_spectrum(p).blocks) {
    for (long i = 0; i < b.multiplicity.get_si(); ++i) expected[--pos] = b.eigenvalue_float;
  }
  std::sort(expected.begin(), expected.end());
  for (Eigen::Index i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expected[static_cast<size_t>(i)], 1e-12);
}

TEST(AveragedState, CapOnQubits) {
  EXPECT_THROW(oracle::avg_state_oracle(validate_params(oracle::kMaxAveragingQubits + 1, 2, 1, 1)),
               ResourceCapExceeded);
}
