#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "countdiag/errors.hpp"
#include "countdiag/moments.hpp"
#include "oracles.hpp"

namespace countdiag {
namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(FallingFactorial, SmallValues) {
  EXPECT_EQ(falling_factorial(5, 0), 1u);
  EXPECT_EQ(falling_factorial(5, 2), 20u);
  EXPECT_EQ(falling_factorial(2, 3), 0u);
  EXPECT_EQ(falling_factorial(10, 6), 151200u);
}

TEST(FallingFactorial, OverflowIsReported) {
  EXPECT_THROW(falling_factorial(std::uint64_t{1} << 40, 6), std::overflow_error);
}

TEST(BinomialCoefficient, ExactAndOutOfRange) {
  EXPECT_DOUBLE_EQ(binomial_coefficient(10, 3), 120.0);
  EXPECT_DOUBLE_EQ(binomial_coefficient(10, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial_coefficient(10, 11), 0.0);
  EXPECT_DOUBLE_EQ(binomial_coefficient(10, -1), 0.0);
  EXPECT_DOUBLE_EQ(binomial_coefficient(60, 30), 118264581564861424.0);
}

TEST(Stirling2, KnownValues) {
  EXPECT_DOUBLE_EQ(stirling2(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(stirling2(4, 2), 7.0);
  EXPECT_DOUBLE_EQ(stirling2(6, 3), 90.0);
  EXPECT_DOUBLE_EQ(stirling2(3, 4), 0.0);
}

TEST(SampleFactorialMoments, HandComputed) {
  const auto s = sample_factorial_moments(CountSeries::fully_observed({0, 1, 2, 3}), 3);
  ASSERT_EQ(s.muhat.size(), 4u);
  EXPECT_DOUBLE_EQ(s.muhat[0], 1.0);
  EXPECT_DOUBLE_EQ(s.mean(), 1.5);
  EXPECT_DOUBLE_EQ(s.factorial(2), (0.0 + 0.0 + 2.0 + 6.0) / 4.0);
  EXPECT_DOUBLE_EQ(s.factorial(3), 6.0 / 4.0);
  EXPECT_EQ(s.n_observed, 4u);
  EXPECT_DOUBLE_EQ(s.tauhat, 1.0);
}

TEST(SampleFactorialMoments, ShortSeriesExamples) {
  const auto full = sample_factorial_moments(CountSeries::fully_observed({2, 3, 1}), 2);
  EXPECT_DOUBLE_EQ(full.mean(), 2.0);
  EXPECT_DOUBLE_EQ(full.factorial(2), 8.0 / 3.0);
  const auto hidden = sample_factorial_moments(apply_mask(CountSeries::fully_observed({2, 3, 1}), {1, 0, 1}), 1);
  EXPECT_DOUBLE_EQ(hidden.mean(), 1.5);
}

TEST(SampleFactorialMoments, MaskedPositionsAreSkipped) {
  CountSeries series;
  series.values = {2, 0, 4, 0};
  series.mask = {1, 0, 1, 0};
  const auto s = sample_factorial_moments(series, 2);
  EXPECT_DOUBLE_EQ(s.mean(), 3.0);
  EXPECT_DOUBLE_EQ(s.factorial(2), (2.0 + 12.0) / 2.0);
  EXPECT_EQ(s.n_observed, 2u);
  EXPECT_DOUBLE_EQ(s.tauhat, 0.5);
}

TEST(SampleFactorialMoments, AllMaskedIsDegenerate) {
  CountSeries series;
  series.values = {0, 0};
  series.mask = {0, 0};
  EXPECT_THROW(sample_factorial_moments(series, 2), DegenerateInputError);
}

TEST(UnivariateMoments, ClosedForms) {
  EXPECT_DOUBLE_EQ(poisson_factorial_moment(3.0, 2), 9.0);
  EXPECT_DOUBLE_EQ(poisson_factorial_moment(3.0, 0), 1.0);
  EXPECT_NEAR(binomial_factorial_moment(10, 0.3, 2), 90.0 * 0.09, 1e-12);
  EXPECT_DOUBLE_EQ(binomial_factorial_moment(3, 0.3, 4), 0.0);
}

TEST(MixedFactorial, PoissonExamples) {
  EXPECT_NEAR(bpoi_mixed_factorial(3.0, 0.5, 1, 1, 1), 10.5, 1e-12);
  EXPECT_NEAR(bpoi_mixed_factorial(3.0, 0.5, 2, 2, 2), 109.125, 1e-12);
}

TEST(MixedFactorial, BinomialExample) {
  EXPECT_NEAR(bbin_mixed_factorial(10, 0.3, 0.5, 1, 1, 1), 10.05, 1e-12);
}

TEST(MixedFactorial, RejectsLagZero) {
  EXPECT_THROW(bpoi_mixed_factorial(3.0, 0.5, 0, 1, 1), ParameterError);
  EXPECT_THROW(bbin_mixed_factorial(10, 0.3, 0.5, 0, 1, 1), ParameterError);
}

TEST(MixedFactorial, IndependenceWhenRhoIsZero) {
  for (int k = 0; k <= 3; ++k) {
    for (int s = 0; s <= 3; ++s) {
      EXPECT_NEAR(bpoi_mixed_factorial(3.0, 0.0, 1, k, s), std::pow(3.0, k + s), 1e-9);
      EXPECT_NEAR(bbin_mixed_factorial(10, 0.3, 0.0, 1, k, s),
                  binomial_factorial_moment(10, 0.3, k) * binomial_factorial_moment(10, 0.3, s), 1e-9);
    }
  }
}

TEST(MixedFactorial, PoissonMatchesBruteForceJointPmf) {
  for (int h : {1, 2, 5}) {
    const auto joint = oracle::poisson_inar1_joint(3.0, 0.5, h);
    for (int k = 1; k <= 3; ++k) {
      for (int s = 1; s <= 3; ++s) {
        const double brute = oracle::expect_joint(
            joint, [&](double x, double y) { return oracle::falling(x, k) * oracle::falling(y, s); });
        EXPECT_LT(rel_err(bpoi_mixed_factorial(3.0, 0.5, h, k, s), brute), 1e-10) << h << " " << k << " " << s;
      }
    }
  }
}

TEST(MixedFactorial, BinomialMatchesBruteForceJointPmf) {
  for (double rho : {-0.2, 0.5}) {
    for (int h : {1, 2, 3}) {
      const auto joint = oracle::bar1_joint(10, 0.3, rho, h);
      for (int k = 1; k <= 3; ++k) {
        for (int s = 1; s <= 3; ++s) {
          const double brute = oracle::expect_joint(
              joint, [&](double x, double y) { return oracle::falling(x, k) * oracle::falling(y, s); });
          EXPECT_LT(rel_err(bbin_mixed_factorial(10, 0.3, rho, h, k, s), brute), 1e-10)
              << rho << " " << h << " " << k << " " << s;
        }
      }
    }
  }
}

TEST(Lag0MixedFactorial, Examples) {
  const auto poi = poisson_univariate_moments(3.0);
  EXPECT_NEAR(lag0_mixed_factorial(poi, 1, 1), 12.0, 1e-12);
  EXPECT_NEAR(lag0_mixed_factorial(poi, 2, 2), 207.0, 1e-10);
  const auto bin = binomial_univariate_moments(10, 0.3);
  EXPECT_NEAR(lag0_mixed_factorial(bin, 1, 2), 35.64, 1e-10);
}

TEST(Lag0MixedFactorial, MatchesBruteForceForEveryPair) {
  const auto pmf_p = oracle::poisson_pmf(3.0);
  const auto pmf_b = oracle::binomial_pmf(10, 0.3);
  const auto poi = poisson_univariate_moments(3.0);
  const auto bin = binomial_univariate_moments(10, 0.3);
  for (int k = 0; k <= 3; ++k) {
    for (int s = 0; s <= 3; ++s) {
      const auto g = [&](double x) { return oracle::falling(x, k) * oracle::falling(x, s); };
      EXPECT_LT(rel_err(lag0_mixed_factorial(poi, k, s), oracle::expect(pmf_p, g)), 1e-10) << k << s;
      EXPECT_LT(rel_err(lag0_mixed_factorial(bin, k, s), oracle::expect(pmf_b, g)), 1e-10) << k << s;
    }
  }
}

TEST(Lag0MixedFactorial, RejectsUnsupportedOrders) {
  const auto poi = poisson_univariate_moments(3.0);
  EXPECT_THROW(lag0_mixed_factorial(poi, 1, 4), std::invalid_argument);
}

TEST(RawFromFactorial, BinomialThirdMoment) {
  const auto bin = binomial_univariate_moments(10, 0.3);
  const auto raw = raw_from_factorial(std::vector<double>(bin.begin(), bin.begin() + 4));
  EXPECT_NEAR(raw[1], 3.0, 1e-12);
  EXPECT_NEAR(raw[2], 11.1, 1e-12);
  // 19.44 + 3 * 8.1 + 3; brute force over the pmf agrees.
  EXPECT_NEAR(raw[3], 46.74, 1e-10);
}

TEST(RawFromFactorial, PoissonMatchesBruteForce) {
  const auto poi = poisson_univariate_moments(2.5);
  const auto raw = raw_from_factorial(std::vector<double>(poi.begin(), poi.end()));
  const auto pmf = oracle::poisson_pmf(2.5);
  for (int j = 0; j <= 6; ++j) {
    EXPECT_LT(rel_err(raw[static_cast<std::size_t>(j)], oracle::expect(pmf, [j](double x) { return std::pow(x, j); })),
              1e-10);
  }
}

}  // namespace
}  // namespace countdiag
