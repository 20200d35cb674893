#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "countdiag/lag_series.hpp"
#include "countdiag/moments.hpp"

namespace countdiag {

enum class IndexKind { PoiDispersion, BinDispersion, SkewPoi, SkewBin };

std::string to_string(IndexKind kind);
/// Accepts "poi-dispersion", "bin-dispersion", "skew-poi", "skew-bin".
IndexKind index_kind_from_string(const std::string& name);

/**
 * @brief Null value, variance and bias of one index at sample size T.
 *
 * variance and bias already include the 1/T factor.
 */
struct IndexAsymptotics {
  IndexKind kind = IndexKind::PoiDispersion;
  double null_value = 1.0;
  double variance = 0.0;
  double bias = 0.0;
  double T = 0.0;

  double mean() const noexcept { return null_value + bias; }
  double sd() const;
};

/**
 * @brief Moments of a stationary count process, captured by value.
 *
 * univariate holds factorial moments of orders 0..6. mixed(k, s, h) is
 * E[(X_t)_(k) (X_{t-h})_(s)] for h >= 1. mixed_polynomial, when set, gives
 * the same function as a polynomial in decay^h so that Markov lag sums are exact.
 */
struct MomentOracle {
  UnivariateMoments univariate{};
  std::function<double(int, int, std::int64_t)> mixed;
  std::function<LagPolynomial(int, int)> mixed_polynomial;

  double mu(int k) const { return univariate.at(static_cast<std::size_t>(k)); }
  /// mu_(k,s)(h) - mu_(k) mu_(s), as a function of h.
  LagTerm centered_mixed(int k, int s) const;
  /// Copy without the polynomial form (forces truncated series).
  MomentOracle series_only() const;
};

MomentOracle poisson_inar1_oracle(double mu, double rho);
MomentOracle bar1_oracle(std::int64_t n, double pi, double rho);

/**
 * @brief Raw-moment view of a count process: E[X^k] and E[X_t^k X_{t-h}^l].
 *
 * raw holds orders 0..4; centered_mixed(k, l) returns mu_{k,l}(h) - mu_k mu_l.
 */
struct RawMomentOracle {
  std::array<double, 5> raw{};
  std::function<LagTerm(int, int)> centered_mixed;

  /// Converts a factorial-moment oracle with Stirling numbers of the second kind.
  static RawMomentOracle from_factorial(const MomentOracle& oracle);
};

/** @brief Inputs of one entry of the moment-vector covariance matrix. */
struct CovarianceRequest {
  int i = 1;
  int j = 1;
  MomentOracle moments;
  MaskLaw mask = MarkovMask{};
  SeriesOptions options{};
};

/**
 * @brief Variance kernel kappa(s) for a Markov mask and geometric dependence.
 * @throws ParameterError outside tau in [0.01, 1], r in [0, 1), rho in [0, 1).
 */
double kappa(int s, double tau, double r, double rho);

/**
 * @brief Long-run covariance of the augmented vector (O_t, O_t (X_t)_(1), ...).
 *
 * Index 0 refers to the mask component.
 */
double sigma_star(int i, int j, const MomentOracle& moments, const MaskLaw& mask,
                  const SeriesOptions& opts = {});

/// Asymptotic covariance sigma_ij of sqrt(T)(mu-hat_(i) - mu_(i), mu-hat_(j) - mu_(j)).
double clt_sigma_general(const CovarianceRequest& req);

/// sigma_ij for i, j = 1..3 (index 0 unused).
std::array<std::array<double, 4>, 4> clt_sigma_matrix(const MomentOracle& moments, const MaskLaw& mask,
                                                      const SeriesOptions& opts = {});

/// Closed-form sigma_ij for a Poisson INAR(1) process and Markov mask; 1 <= i, j <= 3.
double sigma_poisson_markov(int i, int j, double mu, double rho, double tau, double r);
/// Closed-form sigma_ij for a BAR(1) process and Markov mask; 1 <= i, j <= 3.
double sigma_binomial_markov(int i, int j, std::int64_t n, double pi, double rho, double tau, double r);

/// General (model-free) asymptotics of the Poisson index of dispersion.
IndexAsymptotics poi_dispersion_asym_general(const MomentOracle& moments, const MaskLaw& mask, double T,
                                             const SeriesOptions& opts = {});
IndexAsymptotics poi_dispersion_asym_markov(double mu, double rho, double tau, double r, double T);

/// General asymptotics of the binomial index of dispersion with upper bound n.
IndexAsymptotics bin_dispersion_asym_general(std::int64_t n, const MomentOracle& moments, const MaskLaw& mask,
                                             double T, const SeriesOptions& opts = {});
IndexAsymptotics bin_dispersion_asym_markov(std::int64_t n, double pi, double rho, double tau, double r,
                                            double T);

/**
 * @brief General asymptotics of the skewness index via the delta method.
 * @param kind SkewPoi or SkewBin; only labels the result, the null value comes from the moments.
 */
IndexAsymptotics skew_asym_general(const MomentOracle& moments, const MaskLaw& mask, double T,
                                   IndexKind kind = IndexKind::SkewPoi, const SeriesOptions& opts = {});
IndexAsymptotics skew_asym_poisson_markov(double mu, double rho, double tau, double r, double T);
IndexAsymptotics skew_asym_binomial_markov(std::int64_t n, double pi, double rho, double tau, double r,
                                           double T);

/// Poisson dispersion asymptotics computed from raw moments; an independent route to the same values.
IndexAsymptotics raw_poi_dispersion_asym(const RawMomentOracle& moments, const MaskLaw& mask, double T,
                                         const SeriesOptions& opts = {});

}  // namespace countdiag
