#pragma once

#include <cstdint>
#include <random>

namespace countdiag {

/**
 * @brief Reproducibility key: a master seed plus a stream index.
 *
 * Equal keys give byte-identical draws on every platform that ships a
 * conforming std::mt19937_64.
 */
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

/// SplitMix64 finalizer; used to decorrelate seeds derived from small integers.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Combines two 64-bit words into one well-mixed word.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

/**
 * @brief Value-typed random stream.
 *
 * Copying a stream forks it: both copies then produce the same sequence.
 * Uniforms are built from the upper 53 bits of the engine output so that
 * results do not depend on the standard library's floating-point helpers.
 */
class RandomStream {
 public:
  explicit RandomStream(Seed seed);

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Bernoulli(p) draw.
  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Poisson(lambda) draw; inversion below lambda = 30, library sampler above.
  std::int64_t poisson(double lambda);

  /// Binomial(trials, p) draw; exact for every regime.
  std::int64_t binomial(std::int64_t trials, double p);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace countdiag
