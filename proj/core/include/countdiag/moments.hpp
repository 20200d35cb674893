#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "countdiag/core_model.hpp"

namespace countdiag {

/**
 * @brief Amplitude-modulated sample factorial moments.
 *
 * muhat[k] holds the estimate of E[(X)_(k)] for k = 0..m, with muhat[0] = 1.
 */
struct MomentSummary {
  int m = 0;
  std::vector<double> muhat;
  std::size_t n_observed = 0;
  double tauhat = 0.0;

  double mean() const { return muhat.at(1); }
  double factorial(int k) const { return muhat.at(static_cast<std::size_t>(k)); }
};

/// Univariate factorial moments E[(X)_(k)] for k = 0..6 (index 0 holds 1).
using UnivariateMoments = std::array<double, 7>;

/**
 * @brief Falling factorial x (x-1) ... (x-k+1), exact.
 * @throws std::overflow_error when the result does not fit in 64 bits.
 */
std::uint64_t falling_factorial(std::uint64_t x, unsigned k);

/// Falling factorial in floating point for real arguments.
double falling_factorial_real(double x, unsigned k) noexcept;

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n. Exact while it fits in 64 bits.
double binomial_coefficient(std::int64_t n, std::int64_t k);

/// Stirling number of the second kind S(j, k).
double stirling2(int j, int k);

/**
 * @brief mu-hat_(k) = sum O_t (X_t)_(k) / sum O_t for k = 1..m.
 * @throws DegenerateInputError when every position is masked.
 */
MomentSummary sample_factorial_moments(const CountSeries& series, int m);

double poisson_factorial_moment(double mu, int k);
double binomial_factorial_moment(std::int64_t n, double pi, int k);

UnivariateMoments poisson_univariate_moments(double mu);
UnivariateMoments binomial_univariate_moments(std::int64_t n, double pi);

/**
 * @brief Lag-h mixed factorial moment E[(X_t)_(k) (X_{t-h})_(s)] of a Poisson INAR(1).
 *
 * mu_(k) mu_(s) sum_i C(k,i) C(s,i) i! (rho^h / mu)^i, for h >= 1.
 */
double bpoi_mixed_factorial(double mu, double rho, std::int64_t h, int k, int s);

/**
 * @brief Lag-h mixed factorial moment of a BAR(1) process.
 *
 * n_(k) n_(s) pi^(k+s) sum_i [C(k,i) C(n-k,s-i) / C(n,s)] (1 + (1-pi)/pi rho^h)^i, for h >= 1.
 */
double bbin_mixed_factorial(std::int64_t n, double pi, double rho, std::int64_t h, int k, int s);

/**
 * @brief Lag-zero mixed factorial moment E[(X)_(k) (X)_(s)] from univariate moments.
 *
 * Supports k, s <= 3; a zero order reduces to the univariate moment.
 * @throws std::invalid_argument for orders above 3.
 */
double lag0_mixed_factorial(const UnivariateMoments& mu, int k, int s);

/**
 * @brief Raw moments E[X^j] from factorial moments via S(j, k).
 *
 * Input and output are indexed from 0 (index 0 is 1); at most order 6.
 */
std::vector<double> raw_from_factorial(const std::vector<double>& factorial);

}  // namespace countdiag
