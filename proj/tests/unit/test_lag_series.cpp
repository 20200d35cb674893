#include <gtest/gtest.h>

#include <cmath>

#include "countdiag/errors.hpp"
#include "countdiag/lag_series.hpp"

namespace countdiag {
namespace {

TEST(LagPolynomial, EvaluatesPowersOfDecay) {
  const LagPolynomial p{0.5, {0.0, 2.0, 4.0}};
  EXPECT_DOUBLE_EQ(p(1), 2.0 * 0.5 + 4.0 * 0.25);
  EXPECT_DOUBLE_EQ(p(3), 2.0 * 0.125 + 4.0 * 0.015625);
}

TEST(WeightedLagSum, ExactMatchesTruncatedSeries) {
  const LagPolynomial p{0.7, {0.0, 1.5, -0.3, 0.2}};
  for (double tau : {1.0, 0.8, 0.3}) {
    for (double r : {0.0, 0.6, 0.95}) {
      const MarkovMask m{tau, r};
      const double exact = weighted_lag_sum(m, LagTerm::from_polynomial(p));
      const double series = weighted_lag_sum(m, LagTerm::from_polynomial(p).series_only());
      const double via_sequence = weighted_lag_sum(as_sequence(m), LagTerm::from_polynomial(p));
      EXPECT_NEAR(series, exact, 1e-10 * std::abs(exact)) << tau << " " << r;
      EXPECT_NEAR(via_sequence, exact, 1e-10 * std::abs(exact)) << tau << " " << r;
    }
  }
}

TEST(WeightedLagSum, FullObservationGeometricSum) {
  const double got = weighted_lag_sum(MarkovMask{1.0, 0.0}, LagTerm::from_polynomial({0.5, {0.0, 1.0}}));
  EXPECT_NEAR(got, 1.0, 1e-15);
}

TEST(WeightedLagSum, NegativeDecayAlternates) {
  const LagPolynomial p{-0.4, {0.0, 1.0}};
  const MarkovMask m{0.6, 0.5};
  EXPECT_NEAR(weighted_lag_sum(m, LagTerm::from_polynomial(p)),
              weighted_lag_sum(m, LagTerm::from_polynomial(p).series_only()), 1e-12);
}

TEST(WeightedLagSum, RejectsNonVanishingConstant) {
  EXPECT_THROW(weighted_lag_sum(MarkovMask{0.8, 0.2}, LagTerm::from_polynomial({0.5, {1.0, 1.0}})), ParameterError);
}

TEST(WeightedLagSum, SlowDecayHitsLagCap) {
  SeriesOptions opts;
  opts.max_lag = 100;
  const auto f = LagTerm::from_function([](std::int64_t h) { return std::pow(0.9999, static_cast<double>(h)); });
  EXPECT_THROW(weighted_lag_sum(MarkovMask{0.8, 0.2}, f, opts), ConvergenceError);
}

TEST(Combine, ConstantMustCancel) {
  const auto a = LagTerm::from_polynomial({0.5, {0.0, 1.0}});
  EXPECT_THROW(combine({{1.0, a}}, 0.1, 1.0), ParameterError);
  EXPECT_NO_THROW(combine({{1.0, a}}, 1e-12, 1.0));
}

TEST(Combine, KeepsPolynomialWhenDecaysAgree) {
  const auto a = LagTerm::from_polynomial({0.5, {3.0, 1.0}});
  const auto b = LagTerm::from_polynomial({0.5, {-3.0, 0.0, 2.0}});
  const auto c = combine({{1.0, a}, {1.0, b}}, 0.0, 1.0);
  ASSERT_TRUE(c.poly.has_value());
  EXPECT_DOUBLE_EQ(c.poly->coeffs[0], 0.0);
  EXPECT_DOUBLE_EQ(c.eval(2), a.eval(2) + b.eval(2));
  EXPECT_NEAR((*c.poly)(2), c.eval(2), 1e-15);
}

TEST(Combine, DropsPolynomialWhenDecaysDiffer) {
  const auto a = LagTerm::from_polynomial({0.5, {0.0, 1.0}});
  const auto b = LagTerm::from_polynomial({0.3, {0.0, 1.0}});
  const auto c = combine({{2.0, a}, {-1.0, b}}, 0.0, 1.0);
  EXPECT_FALSE(c.poly.has_value());
  EXPECT_DOUBLE_EQ(c.eval(1), 2.0 * 0.5 - 0.3);
}

TEST(MaskAutocovarianceSum, MarkovClosedFormAndSequence) {
  const MarkovMask m{0.6, 0.45};
  const double expected = 0.6 * 0.4 * 0.45 / 0.55;
  EXPECT_NEAR(mask_autocovariance_sum(m), expected, 1e-15);
  EXPECT_NEAR(mask_autocovariance_sum(as_sequence(m)), expected, 1e-12);
  EXPECT_DOUBLE_EQ(mask_autocovariance_sum(MarkovMask{0.6, 0.0}), 0.0);
}

TEST(MaskLawValidation, RejectsOutOfRange) {
  EXPECT_THROW(validate_mask_law(MarkovMask{0.005, 0.0}), ParameterError);
  EXPECT_THROW(validate_mask_law(MarkovMask{0.5, 1.0}), ParameterError);
  EXPECT_THROW(validate_mask_law(LagSequenceMask{0.5, {}}), ParameterError);
  EXPECT_NO_THROW(validate_mask_law(MarkovMask{0.01, 0.0}));
}

TEST(MaskTauLag, MarkovFormula) {
  const MarkovMask m{0.8, 0.6};
  EXPECT_NEAR(mask_tau_lag(m, 1), 0.64 + 0.8 * 0.2 * 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(mask_tau_lag(m, 0), 0.8);
}

}  // namespace
}  // namespace countdiag
