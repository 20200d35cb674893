#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "countdiag/random.hpp"

namespace countdiag {

/// Value stored at unobserved positions. Estimators never read it.
inline constexpr std::int64_t kMaskedSentinel = 0;

/**
 * @brief Count observations with a binary observation mask (amplitude modulation).
 *
 * values[t] is meaningful only where mask[t] == 1.
 */
struct CountSeries {
  std::vector<std::int64_t> values;
  std::vector<std::uint8_t> mask;

  /// Builds a fully observed series.
  static CountSeries fully_observed(std::vector<std::int64_t> values);

  std::size_t size() const noexcept { return values.size(); }
  std::size_t observed_count() const noexcept;
  bool fully_observed() const noexcept;

  /**
   * @brief Checks lengths, mask alphabet and non-negativity of observed values.
   * @param upper_bound when positive, observed values must not exceed it.
   */
  void validate(std::int64_t upper_bound = 0) const;

  /// Drops masked positions; the result is fully observed.
  CountSeries compacted() const;
};

/** @brief Poisson INAR(1): X_t = rho o X_{t-1} + Poi(mu (1 - rho)). */
struct PoiInar1 {
  double mu = 1.0;
  double rho = 0.0;

  double lambda() const noexcept { return mu * (1.0 - rho); }
  void validate() const;
};

/** @brief Binomial AR(1): X_t = alpha o X_{t-1} + beta o (n - X_{t-1}). */
struct Bar1 {
  std::int64_t n = 2;
  double pi = 0.5;
  double rho = 0.0;

  double beta() const noexcept { return pi * (1.0 - rho); }
  double alpha() const noexcept { return beta() + rho; }
  double mean() const noexcept { return static_cast<double>(n) * pi; }
  void validate() const;
};

using ModelSpec = std::variant<PoiInar1, Bar1>;

/// Process mean of either model.
double model_mean(const ModelSpec& model);
/// Lag-one autocorrelation of either model.
double model_rho(const ModelSpec& model);
void validate(const ModelSpec& model);

/**
 * @brief Stationary two-state Markov observation process.
 *
 * tau is the observation probability, r the lag-one autocorrelation of the mask.
 */
struct MissingSpec {
  double tau = 1.0;
  double r = 0.0;

  void validate() const;
  /// E[O_t O_{t+h}] = tau^2 + tau (1 - tau) r^h.
  double tau_lag(std::int64_t h) const;
  /// P(O_t = 1 | O_{t-1} = 1).
  double stay_observed() const noexcept { return tau + (1.0 - tau) * r; }
  /// P(O_t = 1 | O_{t-1} = 0).
  double become_observed() const noexcept { return tau * (1.0 - r); }
};

/// Draws Bin(x, p); throws ParameterError when p is outside [0, 1].
std::int64_t binomial_thinning(std::int64_t x, double p, RandomStream& rng);

CountSeries simulate_poi_inar1(const PoiInar1& spec, std::size_t length, RandomStream& rng);
CountSeries simulate_poi_inar1(const PoiInar1& spec, std::size_t length, Seed seed);

CountSeries simulate_bar1(const Bar1& spec, std::size_t length, RandomStream& rng);
CountSeries simulate_bar1(const Bar1& spec, std::size_t length, Seed seed);

/// Dispatches on the model alternative.
CountSeries simulate_model(const ModelSpec& model, std::size_t length, RandomStream& rng);

std::vector<std::uint8_t> simulate_markov_mask(const MissingSpec& spec, std::size_t length,
                                               RandomStream& rng);
std::vector<std::uint8_t> simulate_markov_mask(const MissingSpec& spec, std::size_t length, Seed seed);

/**
 * @brief Attaches a mask; hidden values are overwritten with kMaskedSentinel.
 *
 * Positions already hidden in the input stay hidden, since their values are gone.
 * @throws std::invalid_argument on a length mismatch or a mask entry other than 0/1.
 */
CountSeries apply_mask(const CountSeries& series, const std::vector<std::uint8_t>& mask);

}  // namespace countdiag
