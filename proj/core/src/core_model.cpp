#include "countdiag/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "countdiag/errors.hpp"

namespace countdiag {

CountSeries CountSeries::fully_observed(std::vector<std::int64_t> values) {
  CountSeries s;
  s.mask.assign(values.size(), 1);
  s.values = std::move(values);
  return s;
}

std::size_t CountSeries::observed_count() const noexcept {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

bool CountSeries::fully_observed() const noexcept {
  return std::all_of(mask.begin(), mask.end(), [](std::uint8_t o) { return o == 1; });
}

void CountSeries::validate(std::int64_t upper_bound) const {
  if (values.size() != mask.size()) {
    throw std::invalid_argument("CountSeries: values and mask differ in length");
  }
  if (values.empty()) throw std::invalid_argument("CountSeries: series is empty");
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (mask[t] > 1) throw std::invalid_argument("CountSeries: mask entries must be 0 or 1");
    if (mask[t] == 0) continue;
    if (values[t] < 0) throw std::invalid_argument("CountSeries: negative count at position " + std::to_string(t));
    if (upper_bound > 0 && values[t] > upper_bound) {
      throw std::invalid_argument("CountSeries: count above upper bound at position " + std::to_string(t));
    }
  }
}

CountSeries CountSeries::compacted() const {
  std::vector<std::int64_t> kept;
  kept.reserve(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (mask[t] == 1) kept.push_back(values[t]);
  }
  return fully_observed(std::move(kept));
}

void PoiInar1::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("PoiInar1: mu must be positive and finite");
  if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("PoiInar1: rho must lie in [0, 1)");
  if (!(lambda() > 0.0)) throw ParameterError("PoiInar1: innovation mean mu (1 - rho) must be positive");
}

void Bar1::validate() const {
  if (n < 2) throw ParameterError("Bar1: n must be at least 2");
  if (!(pi > 0.0 && pi < 1.0)) throw ParameterError("Bar1: pi must lie in (0, 1)");
  const double lower = std::max(-pi / (1.0 - pi), -(1.0 - pi) / pi);
  if (!(rho > lower)) {
    std::ostringstream msg;
    msg << "Bar1: rho must exceed max(-pi/(1-pi), -(1-pi)/pi) = " << lower;
    throw ParameterError(msg.str());
  }
  if (!(rho < 1.0)) throw ParameterError("Bar1: rho must be below 1");
  const double a = alpha();
  const double b = beta();
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    throw ParameterError("Bar1: thinning probabilities alpha and beta must lie in (0, 1)");
  }
}

double model_mean(const ModelSpec& model) {
  return std::visit([](const auto& m) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, PoiInar1>) {
      return m.mu;
    } else {
      return m.mean();
    }
  }, model);
}

double model_rho(const ModelSpec& model) {
  return std::visit([](const auto& m) { return m.rho; }, model);
}

void validate(const ModelSpec& model) {
  std::visit([](const auto& m) { m.validate(); }, model);
}

void MissingSpec::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("MissingSpec: tau must lie in (0, 1]");
  if (!(r >= 0.0 && r < 1.0)) throw ParameterError("MissingSpec: r must lie in [0, 1)");
}

double MissingSpec::tau_lag(std::int64_t h) const {
  if (h < 0) h = -h;
  if (h == 0) return tau;
  return tau * tau + tau * (1.0 - tau) * std::pow(r, static_cast<double>(h));
}

std::int64_t binomial_thinning(std::int64_t x, double p, RandomStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("binomial_thinning: p must lie in [0, 1]");
  if (x < 0) throw ParameterError("binomial_thinning: x must be non-negative");
  return rng.binomial(x, p);
}

CountSeries simulate_poi_inar1(const PoiInar1& spec, std::size_t length, RandomStream& rng) {
  spec.validate();
  if (length == 0) throw ParameterError("simulate_poi_inar1: length must be at least 1");
  std::vector<std::int64_t> x(length);
  const double lambda = spec.lambda();
  x[0] = rng.poisson(spec.mu);
  for (std::size_t t = 1; t < length; ++t) {
    x[t] = rng.binomial(x[t - 1], spec.rho) + rng.poisson(lambda);
  }
  return CountSeries::fully_observed(std::move(x));
}

CountSeries simulate_poi_inar1(const PoiInar1& spec, std::size_t length, Seed seed) {
  RandomStream rng(seed);
  return simulate_poi_inar1(spec, length, rng);
}

CountSeries simulate_bar1(const Bar1& spec, std::size_t length, RandomStream& rng) {
  spec.validate();
  if (length == 0) throw ParameterError("simulate_bar1: length must be at least 1");
  std::vector<std::int64_t> x(length);
  const double a = spec.alpha();
  const double b = spec.beta();
  x[0] = rng.binomial(spec.n, spec.pi);
  for (std::size_t t = 1; t < length; ++t) {
    x[t] = rng.binomial(x[t - 1], a) + rng.binomial(spec.n - x[t - 1], b);
  }
  return CountSeries::fully_observed(std::move(x));
}

CountSeries simulate_bar1(const Bar1& spec, std::size_t length, Seed seed) {
  RandomStream rng(seed);
  return simulate_bar1(spec, length, rng);
}

CountSeries simulate_model(const ModelSpec& model, std::size_t length, RandomStream& rng) {
  return std::visit([&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, PoiInar1>) {
      return simulate_poi_inar1(m, length, rng);
    } else {
      return simulate_bar1(m, length, rng);
    }
  }, model);
}

std::vector<std::uint8_t> simulate_markov_mask(const MissingSpec& spec, std::size_t length,
                                               RandomStream& rng) {
  spec.validate();
  std::vector<std::uint8_t> mask(length, 1);
  if (spec.tau == 1.0 || length == 0) return mask;
  const double p11 = spec.stay_observed();
  const double p01 = spec.become_observed();
  mask[0] = rng.bernoulli(spec.tau) ? 1 : 0;
  for (std::size_t t = 1; t < length; ++t) {
    mask[t] = rng.bernoulli(mask[t - 1] == 1 ? p11 : p01) ? 1 : 0;
  }
  return mask;
}

std::vector<std::uint8_t> simulate_markov_mask(const MissingSpec& spec, std::size_t length, Seed seed) {
  RandomStream rng(seed);
  return simulate_markov_mask(spec, length, rng);
}

CountSeries apply_mask(const CountSeries& series, const std::vector<std::uint8_t>& mask) {
  if (series.values.size() != mask.size()) {
    throw std::invalid_argument("apply_mask: series and mask differ in length");
  }
  CountSeries out;
  out.values = series.values;
  out.mask = mask;
  for (std::size_t t = 0; t < mask.size(); ++t) {
    if (mask[t] > 1) throw std::invalid_argument("apply_mask: mask entries must be 0 or 1");
    // Positions hidden by either the existing or the new mask stay hidden.
    if (series.mask.size() == mask.size() && series.mask[t] == 0) out.mask[t] = 0;
    if (out.mask[t] == 0) out.values[t] = kMaskedSentinel;
  }
  return out;
}

}  // namespace countdiag
