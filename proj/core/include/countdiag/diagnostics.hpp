#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "countdiag/asymptotics.hpp"
#include "countdiag/core_model.hpp"
#include "countdiag/missingness.hpp"
#include "countdiag/moments.hpp"

namespace countdiag {

enum class NullFamily { PoissonInar1, BinomialAr1 };

/// Which critical bound(s) drive the decision. Both bounds always use z_{1-alpha/2}.
enum class Sidedness { TwoSided, Upper, Lower };

enum class Decision { Reject, Retain };

std::string to_string(NullFamily family);
std::string to_string(Sidedness sided);
std::string to_string(Decision decision);
NullFamily null_family_from_string(const std::string& name);  ///< "poisson" or "binomial"
Sidedness sidedness_from_string(const std::string& name);     ///< "two-sided", "upper" or "lower"

/** @brief Null hypothesis and test settings. */
struct NullSpec {
  NullFamily family = NullFamily::PoissonInar1;
  std::int64_t n = 0;  ///< Upper bound; required for the binomial family.
  double alpha = 0.05;
  bool ignore_missing = false;  ///< Drop masked points and treat the rest as complete.
  Sidedness sidedness = Sidedness::TwoSided;
  AcfNormalization acf_normalization = AcfNormalization::SeriesLength;
  std::optional<double> r_override;  ///< Replaces the estimated mask dependence.

  void validate() const;
};

/** @brief Plug-in parameters used for the null asymptotics. */
struct FittedParams {
  double mu_hat = 0.0;
  double rho_hat = 0.0;
  double tau_hat = 1.0;
  double r_hat = 0.0;
  std::size_t T = 0;
  std::int64_t n = 0;
  std::vector<std::string> warnings;
};

/** @brief Outcome of one index test. */
struct TestReport {
  IndexKind kind = IndexKind::PoiDispersion;
  double statistic = 0.0;
  double null_value = 1.0;
  double bias = 0.0;
  double sd = 0.0;
  double lower_critical = 0.0;
  double upper_critical = 0.0;
  double alpha = 0.05;
  Sidedness sidedness = Sidedness::TwoSided;
  Decision decision = Decision::Retain;
  FittedParams fitted;
};

/// mu-hat_(2)/mu-hat - mu-hat + 1. @throws DegenerateInputError when mu-hat = 0.
double index_poi_dispersion(const CountSeries& series);
/// (mu-hat_(2) + mu-hat - mu-hat^2) / (mu-hat (1 - mu-hat/n)). @throws DegenerateInputError when mu-hat is 0 or n.
double index_bin_dispersion(const CountSeries& series, std::int64_t n);
/// mu-hat_(3) / (mu-hat_(2) mu-hat). @throws DegenerateInputError when mu-hat_(2) = 0.
double index_skew(const CountSeries& series);

/// Index value from precomputed sample moments (m >= 3 needed for skewness).
double index_from_moments(const MomentSummary& moments, IndexKind kind, std::int64_t n = 0);

/// The two indices tested under a family: dispersion and skewness.
std::vector<IndexKind> indices_for(NullFamily family);

/**
 * @brief Estimates mu, rho, tau and r from a partially observed series.
 *
 * rho-hat is the lag-one autocorrelation; r-hat is 0 for a fully observed series.
 * Both are clamped into [0, 1 - 1e-9) with a warning.
 */
FittedParams fit_null_params(const CountSeries& series,
                             AcfNormalization norm = AcfNormalization::SeriesLength,
                             std::optional<double> r_override = std::nullopt);

/// Markov closed-form asymptotics of one index at plug-in parameters.
IndexAsymptotics null_asymptotics(IndexKind kind, const FittedParams& fitted);

/**
 * @brief Critical values and decision for a known statistic and plug-in parameters.
 *
 * This is the part of the test that published estimates fully determine.
 */
TestReport critical_report(IndexKind kind, const NullSpec& null, const FittedParams& fitted, double statistic);

/// Full test: statistic, parameter fit, asymptotics and decision.
TestReport test_index(const CountSeries& series, const NullSpec& null, IndexKind kind);

}  // namespace countdiag
