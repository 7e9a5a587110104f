#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "asymq/errors.hpp"
#include "asymq/oracle.hpp"
#include "asymq/schur_weyl.hpp"
#include "support/oracles.hpp"

using namespace asymq;
namespace t = asymq::testing;

namespace {

BigRational frac(long a, long b) { return BigRational(BigInt(a), BigInt(b)); }

std::string violated(long n, long m, long k, long l) {
  try {
    validate_params(n, m, k, l);
  } catch (const ConstraintViolation& e) {
    return e.violated();
  }
  return "";
}

// Clears ASYMQ_MAX_N on scope exit.
struct EnvCap {
  explicit EnvCap(const char* v) { setenv("ASYMQ_MAX_N", v, 1); }
  ~EnvCap() { unsetenv("ASYMQ_MAX_N"); }
};

}  // namespace

TEST(Params, DerivedCounts) {
  const Params p = validate_params(10, 4, 3, 1);
  EXPECT_EQ(p.M(), 3);
  EXPECT_EQ(p.N(), 4);
  EXPECT_EQ(p.K(), 2);
  EXPECT_EQ(p.L(), 1);
  EXPECT_EQ(p.flipped(), validate_params(10, 6, 3, 2));
  std::ostringstream os;
  os << p;
  EXPECT_EQ(os.str(), "(10,4,3,1)");
}

TEST(Params, NamesTheViolatedInequality) {
  EXPECT_EQ(violated(2, 2, 1, 0), "m + k - n <= l");
  EXPECT_EQ(violated(3, 4, 0, 0), "m <= n");
  EXPECT_EQ(violated(3, 1, 4, 0), "k <= n");
  EXPECT_EQ(violated(5, 1, 2, 2), "l <= min(m, k)");
  EXPECT_EQ(violated(5, -1, 0, 0), "n, m, k, l >= 0");
  EXPECT_EQ(violated(5, 2, 2, 1), "");
}

TEST(Params, EnumerationMatchesBruteForce) {
  for (int n = 0; n <= 12; ++n) {
    long brute = 0;
    for (int m = 0; m <= n; ++m) {
      for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= n; ++l) {
          if (m + k - n <= l && l <= std::min(m, k)) ++brute;
        }
      }
    }
    EXPECT_EQ(static_cast<long>(enumerate_params(n).size()), brute);
  }
}

TEST(Irrep, DimensionFormsAgreeAndFillTheSpace) {
  for (long n = 0; n <= 40; ++n) {
    BigInt total = 0;
    for (long x = 0; 2 * x <= n; ++x) {
      EXPECT_EQ(dim_irrep(n, x), dim_irrep_hook_ratio(n, x));
      EXPECT_NEAR(log_dim_irrep(n, x), log_of(dim_irrep(n, x)), 1e-12);
      total += dim_irrep(n, x) * (n - 2 * x + 1);
    }
    BigInt two_n = 1;
    two_n <<= static_cast<unsigned>(n);
    EXPECT_EQ(total, two_n);
  }
  EXPECT_EQ(dim_irrep(4, 2), 2);
  EXPECT_THROW(dim_irrep(4, 3), DomainError);
  EXPECT_NEAR(log_dim_irrep(5000, 1000), t::log_binomial_by_sum(5000, 1000) + std::log(3001.0 / 4001.0), 1e-8);
}

TEST(ClebschGordan, SpinHalfClosedForm) {
  // |<j1, m - 1/2; 1/2, 1/2 | j1 + 1/2, m>|^2 = (j1 + m + 1/2)/(2 j1 + 1)
  for (int tj1 = 0; tj1 <= 12; ++tj1) {
    for (int tm = -(tj1 + 1); tm <= tj1 + 1; tm += 2) {
      if (std::abs(tm - 1) > tj1) continue;
      const BigRational got = cg_squared(Spin::from_twice(tj1), Spin::from_twice(tm - 1), Spin::from_twice(1),
                                         Spin::from_twice(1), Spin::from_twice(tj1 + 1), Spin::from_twice(tm));
      EXPECT_EQ(got, BigRational(BigInt(tj1 + tm + 1), BigInt(2 * (tj1 + 1))));
    }
  }
}

TEST(ClebschGordan, CompletenessAndOrthogonality) {
  for (int tj1 = 0; tj1 <= 6; ++tj1) {
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
          BigRational sum = 0;
          for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
            sum += cg_squared(Spin::from_twice(tj1), Spin::from_twice(tm1), Spin::from_twice(tj2),
                              Spin::from_twice(tm2), Spin::from_twice(tJ), Spin::from_twice(tm1 + tm2));
          }
          EXPECT_EQ(sum, BigRational(1));
        }
      }
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        for (int tM = -tJ; tM <= tJ; tM += 2) {
          BigRational sum = 0;
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            sum += cg_squared(Spin::from_twice(tj1), Spin::from_twice(tm1), Spin::from_twice(tj2),
                              Spin::from_twice(tM - tm1), Spin::from_twice(tJ), Spin::from_twice(tM));
          }
          EXPECT_EQ(sum, BigRational(1)) << tj1 << " " << tj2 << " " << tJ << " " << tM;
        }
      }
    }
  }
}

TEST(ClebschGordan, SelectionRules) {
  EXPECT_TRUE(cg_squared(Spin::whole(1), Spin::whole(0), Spin::whole(1), Spin::whole(0), Spin::whole(1),
                         Spin::whole(1))
                  .is_zero());
  EXPECT_TRUE(cg_squared(Spin::whole(1), Spin::whole(0), Spin::whole(1), Spin::whole(0), Spin::whole(3),
                         Spin::whole(0))
                  .is_zero());
  // <1 0; 1 0 | 1 0> vanishes by symmetry.
  EXPECT_TRUE(cg_squared(Spin::whole(1), Spin::whole(0), Spin::whole(1), Spin::whole(0), Spin::whole(1),
                         Spin::whole(0))
                  .is_zero());
  EXPECT_EQ(cg_squared(Spin::whole(1), Spin::whole(0), Spin::whole(1), Spin::whole(0), Spin::whole(2),
                       Spin::whole(0)),
            frac(2, 3));
}

TEST(Pmf, SmallExamples) {
  const Pmf a = pmf(validate_params(2, 1, 1, 1));
  EXPECT_EQ(a.exact(0), frac(1, 2));
  EXPECT_EQ(a.exact(1), frac(1, 2));
  const Pmf b = pmf(validate_params(5, 2, 0, 0));
  EXPECT_EQ(b.x_min(), 0);
  EXPECT_EQ(b.x_max(), 0);
  EXPECT_EQ(b.exact(0), BigRational(1));
  const Pmf c = pmf(validate_params(4, 2, 2, 1));
  EXPECT_EQ(c.exact(0), frac(1, 3));
  EXPECT_EQ(c.exact(1), frac(1, 2));
  EXPECT_EQ(c.exact(2), frac(1, 6));
  EXPECT_EQ(c.exact(3), BigRational(0));
}

TEST(Pmf, MatchesDenseOracleSample) {
  for (int n = 1; n <= 9; n += 2) {
    for (const Params& p : enumerate_params(n)) {
      const Pmf d = pmf(p);
      const auto ref = oracle::pmf_oracle(p);
      for (int x = 0; x < static_cast<int>(ref.size()); ++x) EXPECT_NEAR(d.prob(x), ref[static_cast<size_t>(x)], 1e-10);
      EXPECT_EQ(d.exact_total(), BigRational(1));
    }
  }
}

TEST(Pmf, ClosedFormEqualsCouplingAndFloatPath) {
  for (int n = 1; n <= 16; ++n) {
    for (const Params& p : enumerate_params(n)) {
      if (p.k() != p.l() || p.m() > p.n() - p.m()) continue;
      const Pmf a = pmf(p), b = pmf_closed_kl(p, Arithmetic::exact), c = pmf_closed_kl(p, Arithmetic::floating);
      for (int x = 0; 2 * x <= n; ++x) {
        EXPECT_EQ(a.exact(x), b.exact(x));
        EXPECT_NEAR(c.prob(x), a.prob(x), 1e-12);
      }
    }
  }
  EXPECT_THROW(pmf_closed_kl(validate_params(6, 2, 3, 1)), PreconditionViolation);
  EXPECT_THROW(pmf_closed_kl(validate_params(6, 4, 2, 2)), PreconditionViolation);
}

TEST(Pmf, RelabellingSymmetry) {
  for (int n = 0; n <= 12; ++n) {
    for (const Params& p : enumerate_params(n)) {
      auto [a, b] = pmf_symmetry_pair(p);
      for (int x = 0; 2 * x <= n; ++x) EXPECT_EQ(a.exact(x), b.exact(x));
    }
  }
}

TEST(Pmf, LargeNPathsAndCaps) {
  const Pmf big = pmf_auto(validate_params(2000, 1000, 400, 400));
  EXPECT_FALSE(big.is_exact());
  EXPECT_NEAR(big.total(), 1.0, 1e-10);
  // Small attached block stays exact above the cap.
  const Pmf small_k = pmf_auto(validate_params(5000, 2500, 2, 1));
  EXPECT_TRUE(small_k.is_exact());
  EXPECT_EQ(small_k.exact_total(), BigRational(1));
  EXPECT_THROW(pmf(validate_params(400, 200, 100, 40)), ResourceCapExceeded);
  // l = 0 with n - m <= m routes through the relabelled closed form.
  const Pmf flipped = pmf_auto(validate_params(400, 300, 100, 0));
  const Pmf direct = pmf_closed_kl(validate_params(400, 100, 100, 100));
  for (int x = 0; x <= 100; ++x) EXPECT_NEAR(flipped.prob(x), direct.prob(x), 1e-14);
}

TEST(Pmf, EnvironmentCap) {
  EnvCap cap("20");
  EXPECT_EQ(max_exact_n(), 20);
  EXPECT_THROW(pmf(validate_params(30, 15, 20, 10)), ResourceCapExceeded);
  EXPECT_NO_THROW(pmf(validate_params(30, 15, 4, 2)));
}

TEST(Spectrum, TraceAndMultiplicities) {
  for (int n = 1; n <= 12; ++n) {
    for (const Params& p : enumerate_params(n)) {
      const auto sp = avg_spectrum(p);
      EXPECT_EQ(sp.exact_trace(), BigRational(1));
    }
  }
  const auto sp = avg_spectrum(validate_params(4, 2, 2, 1));
  ASSERT_EQ(sp.blocks.size(), 3u);
  EXPECT_EQ(sp.blocks[1].eigenvalue, frac(1, 6));
  EXPECT_EQ(sp.blocks[1].multiplicity, 3);
}

TEST(Entropy, MatchesPermutationAveragingSmallN) {
  for (int n = 1; n <= 5; ++n) {
    for (const Params& p : enumerate_params(n)) EXPECT_NEAR(avg_entropy(p), oracle::entropy_oracle(p), 1e-9);
  }
}

TEST(Entropy, Examples) {
  // Dicke states and their relabellings are invariant.
  EXPECT_NEAR(avg_entropy(validate_params(6, 3, 0, 0)), 0.0, 1e-15);
  // A plain bit string averages to the uniform mixture of its weight class.
  EXPECT_NEAR(avg_entropy(validate_params(6, 2, 6, 2)), std::log(15.0), 1e-12);
  EXPECT_NEAR(avg_entropy(validate_params(6, 2, 6, 2), LogBase::two), std::log2(15.0), 1e-12);
}

TEST(Threshold, HsMatchesGridOracle) {
  for (const Params& p : {validate_params(4, 2, 2, 1), validate_params(9, 4, 3, 1), validate_params(12, 5, 6, 3)}) {
    const Pmf d = pmf(p);
    std::vector<double> spectrum;
    for (const auto& b : avg_spectrum(p).blocks) {
      for (long i = 0; i < b.multiplicity.get_si(); ++i) spectrum.push_back(b.eigenvalue_float);
    }
    for (double eps : {0.05, 0.2, 0.5, 0.8}) {
      const auto got = hs_epsilon_avg(d, p.n(), eps);
      EXPECT_TRUE(got.open_endpoint);
      EXPECT_NEAR(got.value, t::hs_grid_oracle(spectrum, eps), 1e-9) << p << " eps=" << eps;
    }
  }
  EXPECT_THROW(hs_epsilon_avg(validate_params(4, 2, 2, 1), 1.0), DomainError);
}

TEST(Threshold, Quantile) {
  const Pmf d = pmf(validate_params(4, 2, 2, 1));
  EXPECT_EQ(pmf_quantile(d, 0.1), 0);
  EXPECT_EQ(pmf_quantile(d, 0.3), 0);
  EXPECT_EQ(pmf_quantile(d, 0.5), 1);
  EXPECT_EQ(pmf_quantile(d, 0.9), 2);
}

TEST(Csv, PmfColumns) {
  std::ostringstream os;
  write_pmf_csv(os, pmf(validate_params(2, 1, 1, 1)));
  EXPECT_EQ(os.str(), "x,p_num,p_den,p_float\n0,1,2,0.5\n1,1,2,0.5\n");
  std::ostringstream fs;
  write_pmf_csv(fs, pmf_closed_kl(validate_params(2, 1, 1, 1), Arithmetic::floating));
  EXPECT_EQ(fs.str(), "x,p_float\n0,0.5\n1,0.5\n");
}
