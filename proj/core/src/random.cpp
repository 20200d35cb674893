#include "countdiag/random.hpp"

#include <algorithm>
#include <cmath>

#include "countdiag/errors.hpp"

namespace countdiag {

namespace {

constexpr double kInversionLimit = 30.0;

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

RandomStream::RandomStream(Seed seed) {
  const std::uint64_t s0 = mix_seed(seed.master, seed.stream);
  std::seed_seq seq{static_cast<std::uint32_t>(s0), static_cast<std::uint32_t>(s0 >> 32),
                    static_cast<std::uint32_t>(seed.stream), static_cast<std::uint32_t>(seed.stream >> 32)};
  engine_.seed(seq);
}

std::int64_t RandomStream::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("poisson: lambda must be finite and non-negative");
  }
  if (lambda == 0.0) return 0;
  if (lambda >= kInversionLimit) {
    std::poisson_distribution<std::int64_t> dist(lambda);
    return dist(engine_);
  }
  // Sequential search; the cap guards against round-off leaving F just below u.
  const double u = uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::int64_t k = 0;
  const std::int64_t cap = static_cast<std::int64_t>(lambda + 40.0 * std::sqrt(lambda) + 40.0);
  while (u >= cdf && k < cap) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::int64_t RandomStream::binomial(std::int64_t trials, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("binomial: probability must lie in [0, 1]");
  if (trials < 0) throw ParameterError("binomial: number of trials must be non-negative");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;

  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  const double n = static_cast<double>(trials);
  std::int64_t k = 0;
  if (n * q < kInversionLimit) {
    const double u = uniform();
    const double odds = q / (1.0 - q);
    double prob = std::exp(n * std::log1p(-q));
    double cdf = prob;
    while (u >= cdf && k < trials) {
      prob *= odds * static_cast<double>(trials - k) / static_cast<double>(k + 1);
      ++k;
      cdf += prob;
    }
  } else {
    std::binomial_distribution<std::int64_t> dist(trials, q);
    k = dist(engine_);
  }
  return flip ? trials - k : k;
}

}  // namespace countdiag
