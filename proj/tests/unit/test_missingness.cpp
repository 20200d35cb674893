#include <gtest/gtest.h>

#include <cmath>

#include "countdiag/core_model.hpp"
#include "countdiag/errors.hpp"
#include "countdiag/missingness.hpp"
#include "stats_helpers.hpp"

namespace countdiag {
namespace {

using testing_support::sample_acf;
using testing_support::to_double;

CountSeries masked_inar(double mu, double rho, MissingSpec miss, std::size_t T, std::uint64_t seed) {
  RandomStream rng(Seed{seed, 0});
  const auto x = simulate_poi_inar1(PoiInar1{mu, rho}, T, rng);
  return apply_mask(x, simulate_markov_mask(miss, T, rng));
}

TEST(EstimateTau, FractionObserved) {
  EXPECT_DOUBLE_EQ(estimate_tau({1, 0, 1, 1}), 0.75);
  EXPECT_THROW(estimate_tau({}), DegenerateInputError);
}

TEST(EstimateR, RecoversMarkovDependence) {
  const auto mask = simulate_markov_mask(MissingSpec{0.7, 0.4}, 200000, Seed{3, 0});
  EXPECT_NEAR(estimate_r(mask), 0.4, 0.01);
}

TEST(EstimateR, AlternatingMaskIsNegative) {
  std::vector<std::uint8_t> mask(1000);
  for (std::size_t t = 0; t < mask.size(); ++t) mask[t] = static_cast<std::uint8_t>(t % 2 == 0);
  EXPECT_NEAR(estimate_r(mask), -1.0, 0.01);
}

TEST(EstimateR, IidMaskIsNearZero) {
  RandomStream rng(Seed{4, 0});
  std::vector<std::uint8_t> mask(1000000);
  for (auto& o : mask) o = rng.bernoulli(0.8);
  EXPECT_NEAR(estimate_r(mask), 0.0, 3.0 / std::sqrt(1e6));
}

TEST(EstimateR, ConstantMaskIsDegenerate) {
  EXPECT_THROW(estimate_r({1, 1, 1, 1}), DegenerateInputError);
  EXPECT_THROW(estimate_r({0, 0, 0}), DegenerateInputError);
}

TEST(RealizedTauLag, CountsJointlyObservedPairsOverT) {
  const std::vector<std::uint8_t> mask{1, 1, 0, 1, 1};
  EXPECT_DOUBLE_EQ(realized_tau_lag(mask, 0), 0.8);
  EXPECT_DOUBLE_EQ(realized_tau_lag(mask, 1), 0.4);
  EXPECT_DOUBLE_EQ(realized_tau_lag(mask, 2), 0.2);
}

TEST(DrAcf, FullyObservedEqualsOrdinarySampleAcf) {
  const auto s = simulate_poi_inar1(PoiInar1{3.0, 0.5}, 500, Seed{5, 0});
  const auto x = to_double(s.values);
  const auto est = dr_acf(s, 4);
  for (std::size_t l = 1; l <= 4; ++l) EXPECT_NEAR(est.rho_hat[l], sample_acf(x, l), 1e-12);
  EXPECT_DOUBLE_EQ(est.tau_lag[0], 1.0);
}

TEST(DrAcf, SeriesLengthNormalizationConvergesToScaledAutocorrelation) {
  const MissingSpec miss{0.8, 0.6};
  const auto s = masked_inar(3.0, 0.5, miss, 400000, 7);
  const auto est = dr_acf(s, 2, AcfNormalization::SeriesLength);
  EXPECT_NEAR(est.rho_hat[1], 0.5 * miss.tau_lag(1) / miss.tau, 0.01);
  EXPECT_NEAR(est.rho_hat[1], 0.46, 0.01);
}

TEST(DrAcf, PairCountNormalizationIsConsistent) {
  const auto s = masked_inar(3.0, 0.5, MissingSpec{0.8, 0.6}, 400000, 8);
  const auto est = dr_acf(s, 3, AcfNormalization::PairCount);
  for (std::size_t l = 1; l <= 3; ++l) EXPECT_NEAR(est.rho_hat[l], std::pow(0.5, l), 0.01) << l;
}

TEST(DrAutocovariance, LagZeroIsBiasedSampleVariance) {
  const auto s = CountSeries::fully_observed({1, 4, 2, 5});
  EXPECT_DOUBLE_EQ(dr_autocovariance(s, 0), (4.0 + 1.0 + 1.0 + 4.0) / 4.0);
  EXPECT_DOUBLE_EQ(dr_autocovariance(CountSeries::fully_observed({3, 3, 3}), 1), 0.0);
}

TEST(DrAcf, RejectsLagBeyondSeries) {
  const auto s = CountSeries::fully_observed({1, 2, 3});
  EXPECT_THROW(dr_acf(s, 3), std::invalid_argument);
  EXPECT_THROW(dr_autocovariance(s, 5), std::invalid_argument);
}

TEST(DrAcf, ConstantObservedValuesAreDegenerate) {
  EXPECT_THROW(dr_acf(CountSeries::fully_observed({2, 2, 2, 2}), 1), DegenerateInputError);
}

TEST(DurbinLevinson, MovingAverageExample) {
  const auto pacf = durbin_levinson_pacf({0.4, 0.0, 0.0});
  EXPECT_NEAR(pacf[0], 0.4, 1e-15);
  EXPECT_NEAR(pacf[1], -4.0 / 21.0, 1e-12);
  EXPECT_NEAR(pacf[1], -0.190476, 1e-6);
}

TEST(DurbinLevinson, AutoregressiveCutoff) {
  for (double rho : {-0.6, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    std::vector<double> acf;
    for (int h = 1; h <= 6; ++h) acf.push_back(std::pow(rho, h));
    const auto pacf = durbin_levinson_pacf(acf);
    EXPECT_NEAR(pacf[0], rho, 1e-12);
    for (std::size_t k = 1; k < pacf.size(); ++k) EXPECT_NEAR(pacf[k], 0.0, 1e-10) << rho << " " << k;
  }
}

TEST(DurbinLevinson, SingularStepIsReported) {
  EXPECT_THROW(durbin_levinson_pacf({1.0, 1.0, 1.0}), NumericalDegeneracyError);
}

TEST(AcfCriticalBand, Examples) {
  EXPECT_NEAR(acf_critical_band({1.0, 1.0}, 400, 0.05).half_width[1], 0.098, 5e-4);
  EXPECT_NEAR(acf_critical_band({0.8, 0.64}, 100, 0.05).half_width[1], 0.245, 5e-4);
  EXPECT_THROW(acf_critical_band({1.0, 0.0}, 100, 0.05), DegenerateInputError);
}

TEST(AcfCriticalBand, EmpiricalSizeUnderMaskedWhiteNoise) {
  const std::size_t T = 500;
  const int reps = 10000;
  int exceed = 0;
  for (int rep = 0; rep < reps; ++rep) {
    RandomStream rng(Seed{77, static_cast<std::uint64_t>(rep)});
    const auto x = simulate_poi_inar1(PoiInar1{3.0, 0.0}, T, rng);
    const auto s = apply_mask(x, simulate_markov_mask(MissingSpec{0.8, 0.6}, T, rng));
    const auto est = dr_acf(s, 1, AcfNormalization::PairCount);
    const auto band = acf_critical_band(est.tau_lag, T, 0.05);
    exceed += std::abs(est.rho_hat[1]) > band.half_width[1];
  }
  EXPECT_NEAR(static_cast<double>(exceed) / reps, 0.05, 0.01);
}

TEST(AcfCriticalBand, OneSigmaLevel) {
  EXPECT_NEAR(acf_critical_band({1.0, 0.5}, 200, 0.3173).half_width[1], 0.1, 1e-4);
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_THROW(normal_quantile(1.0), ParameterError);
}

}  // namespace
}  // namespace countdiag
