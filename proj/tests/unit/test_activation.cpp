#include <gtest/gtest.h>

#include <cmath>

#include "asymq/activation.hpp"
#include "asymq/errors.hpp"

using namespace asymq;

TEST(Activation, DickeAloneActivatesNothing) {
  for (int m = 0; m <= 8; ++m) {
    EXPECT_NEAR(permutation_activation(validate_params(8, m, 0, 0), true).activation, 0.0, 1e-14);
    EXPECT_NEAR(permutation_activation(validate_params(8, m, 0, 0), false).activation, 0.0, 1e-14);
  }
}

TEST(Activation, DecoheredExample) {
  const auto r = permutation_activation(validate_params(4, 2, 2, 1), false);
  EXPECT_NEAR(r.asym_whole, std::log(3.0), 1e-14);
  EXPECT_NEAR(r.asym_added, std::log(2.0), 1e-14);
  EXPECT_NEAR(r.activation, std::log(1.5), 1e-14);
  const auto bits = permutation_activation(validate_params(4, 2, 2, 1), false, LogBase::two);
  EXPECT_EQ(bits.base, LogBase::two);
  EXPECT_NEAR(bits.activation, std::log2(1.5), 1e-14);
}

TEST(Activation, CoherentDominatesDecohered) {
  for (int n = 2; n <= 14; n += 3) {
    for (const Params& p : enumerate_params(n)) {
      EXPECT_GE(permutation_activation(p, true).activation, permutation_activation(p, false).activation - 1e-12)
          << p;
    }
  }
}

TEST(Antisymmetric, Examples) {
  EXPECT_NEAR(antisym_activation(2, 2), std::log(10.0), 1e-14);
  EXPECT_NEAR(antisym_activation(3, 3), std::log(165.0), 1e-13);
  EXPECT_NEAR(antisym_activation(1, 7), 0.0, 1e-14);
  EXPECT_NEAR(antisym_activation(2, 2, LogBase::two), std::log2(10.0), 1e-14);
  EXPECT_THROW(antisym_activation(3, 2), DomainError);
  EXPECT_THROW(antisym_activation(0, 2), DomainError);
}

TEST(Antisymmetric, FormsAgree) {
  for (long n = 1; n <= 30; ++n) {
    for (long d = n; d <= n + 40; d += 3) {
      EXPECT_NEAR(antisym_activation_sum(n, d), antisym_activation_binomial(n, d), 1e-10);
    }
  }
}

TEST(Antisymmetric, OptimalDimensionIsSmallest) {
  for (long n : {2L, 3L, 10L}) {
    const auto o = antisym_optimal_d(n);
    EXPECT_EQ(o.d, n);
    EXPECT_NEAR(o.value, antisym_activation(n, n), 1e-14);
  }
  EXPECT_NEAR(antisym_optimal_d(3).value, std::log(165.0), 1e-13);
}
