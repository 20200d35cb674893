#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace countdiag {

/**
 * @brief f(h) = sum_j coeffs[j] * decay^(j h), a polynomial in decay^h.
 *
 * Mixed moments of both shipped models have this form in rho^h, which lets
 * lag sums against a Markov mask be evaluated exactly.
 */
struct LagPolynomial {
  double decay = 0.0;
  std::vector<double> coeffs;

  double operator()(std::int64_t h) const;
};

/// Observation process with Markov dependence: tau(h) = tau^2 + tau (1 - tau) r^h.
struct MarkovMask {
  double tau = 1.0;
  double r = 0.0;
};

/// Observation process given through its lagged products tau(h) = E[O_t O_{t+h}], h >= 1.
struct LagSequenceMask {
  double tau = 1.0;
  std::function<double(std::int64_t)> tau_lag;
};

using MaskLaw = std::variant<MarkovMask, LagSequenceMask>;

/// Smallest observation probability for which the asymptotics are evaluated.
inline constexpr double kMinTau = 0.01;

double mask_tau(const MaskLaw& law);
double mask_tau_lag(const MaskLaw& law, std::int64_t h);
/// Rejects tau outside [kMinTau, 1], r outside [0, 1) and missing callables.
void validate_mask_law(const MaskLaw& law);
/// Same law expressed as an explicit sequence (forces the truncated-series path).
LagSequenceMask as_sequence(const MarkovMask& law);

/** @brief Truncation controls for lag series without a closed form. */
struct SeriesOptions {
  double tolerance = 1e-15;         ///< Stop once the estimated tail is below tolerance * |partial sum|.
  std::int64_t max_lag = 1000000;   ///< Hard cap; reaching it raises ConvergenceError.
};

/**
 * @brief A function of the lag h >= 1 that vanishes as h grows.
 *
 * eval is always set; poly is set when the function is a LagPolynomial.
 */
struct LagTerm {
  std::optional<LagPolynomial> poly;
  std::function<double(std::int64_t)> eval;

  static LagTerm from_polynomial(LagPolynomial p);
  static LagTerm from_function(std::function<double(std::int64_t)> f);
  /// Drops the polynomial form so that sums run through the truncated series.
  LagTerm series_only() const;
};

/**
 * @brief Linear combination sum_i w_i f_i(h) + constant.
 *
 * The constant is the h -> infinity limit that the caller's expression
 * predicts; it must cancel to round-off (relative 1e-9) and is then dropped.
 * @throws ParameterError when it does not cancel.
 */
LagTerm combine(const std::vector<std::pair<double, LagTerm>>& parts, double constant, double scale);

/**
 * @brief sum_{h >= 1} tau(h) f(h).
 *
 * Exact geometric sums when the mask is Markov and f is a polynomial;
 * otherwise a truncated series with a ratio-based geometric tail bound.
 */
double weighted_lag_sum(const MaskLaw& law, const LagTerm& f, const SeriesOptions& opts = {});

/// sum_{h >= 1} gamma_O(h) with gamma_O(h) = tau(h) - tau^2.
double mask_autocovariance_sum(const MaskLaw& law, const SeriesOptions& opts = {});

}  // namespace countdiag
