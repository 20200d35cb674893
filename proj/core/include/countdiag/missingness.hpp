#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "countdiag/core_model.hpp"

namespace countdiag {

/**
 * @brief Denominator of the amplitude-modulated autocovariance.
 *
 * SeriesLength divides by T for every lag (Dunsmuir-Robinson, the default).
 * Its ratio Chat(l)/Chat(0) tends to rho(l) tau(l)/tau rather than rho(l)
 * under serially dependent missingness. PairCount divides by the number of
 * jointly observed pairs at each lag and is consistent for rho(l).
 */
enum class AcfNormalization { SeriesLength, PairCount };

/** @brief Autocorrelation estimates of a partially observed series. */
struct AcfEstimate {
  std::vector<double> rho_hat;  ///< rho_hat[l] for l = 0..L; rho_hat[0] = 1; not clipped.
  std::vector<double> tau_lag;  ///< (1/T) sum O_t O_{t+l} for l = 0..L.
  std::size_t T = 0;
  AcfNormalization normalization = AcfNormalization::SeriesLength;

  std::size_t max_lag() const noexcept { return rho_hat.empty() ? 0 : rho_hat.size() - 1; }
};

/** @brief Symmetric per-lag band +-z_{1-alpha/2} / sqrt(T tau_lag[l]). */
struct AcfBand {
  std::vector<double> half_width;  ///< Index l; entry 0 is unused (0).
};

/// Fraction of observed positions.
double estimate_tau(const std::vector<std::uint8_t>& mask);

/**
 * @brief Lag-one sample autocorrelation of the binary mask.
 * @throws DegenerateInputError for a constant mask (r is then unidentified).
 * Values outside [0, 1) are returned as-is; callers decide whether to clamp.
 */
double estimate_r(const std::vector<std::uint8_t>& mask);

/// Realized lagged product (1/T) sum_t O_t O_{t+l}.
double realized_tau_lag(const std::vector<std::uint8_t>& mask, std::size_t lag);

/**
 * @brief Mean-corrected autocovariance over jointly observed pairs.
 *
 * The mean is the amplitude-modulated sample mean.
 */
double dr_autocovariance(const CountSeries& series, std::size_t lag,
                         AcfNormalization norm = AcfNormalization::SeriesLength);

/**
 * @brief Autocorrelations for lags 0..max_lag.
 * @throws DegenerateInputError when Chat(0) is zero.
 */
AcfEstimate dr_acf(const CountSeries& series, std::size_t max_lag,
                   AcfNormalization norm = AcfNormalization::SeriesLength);

/**
 * @brief Partial autocorrelations phi_11..phi_LL from rho(1)..rho(L).
 * @throws NumericalDegeneracyError when |phi_kk| reaches 1 before the last lag.
 */
std::vector<double> durbin_levinson_pacf(const std::vector<double>& acf);

/**
 * @brief Independence band per lag; tau_lag is indexed from 0 like AcfEstimate::tau_lag.
 * @throws DegenerateInputError when some tau_lag[l] (l >= 1) is zero.
 */
AcfBand acf_critical_band(const std::vector<double>& tau_lag, std::size_t T, double alpha);

/// Standard normal quantile.
double normal_quantile(double p);

}  // namespace countdiag
