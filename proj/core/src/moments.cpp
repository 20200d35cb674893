#include "countdiag/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "countdiag/errors.hpp"

namespace countdiag {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr u128 kU64Max = std::numeric_limits<std::uint64_t>::max();

void check_order(int k, const char* where) {
  if (k < 0) throw std::invalid_argument(std::string(where) + ": order must be non-negative");
}

}  // namespace

std::uint64_t falling_factorial(std::uint64_t x, unsigned k) {
  if (k > x) return 0;
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= static_cast<u128>(x - i);
    if (acc > kU64Max) throw std::overflow_error("falling_factorial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

double falling_factorial_real(double x, unsigned k) noexcept {
  double acc = 1.0;
  for (unsigned i = 0; i < k; ++i) acc *= (x - static_cast<double>(i));
  return acc;
}

double binomial_coefficient(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  // Multiplicative formula stays exact: each partial product is itself a binomial coefficient.
  u128 acc = 1;
  bool exact = true;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    if (acc > kU64Max) {
      exact = false;
      break;
    }
  }
  if (exact) return static_cast<double>(acc);
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::exp(std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0));
}

double stirling2(int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("stirling2: negative argument");
  if (j == 0 && k == 0) return 1.0;
  if (j == 0 || k == 0 || k > j) return 0.0;
  std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= j; ++i) {
    for (int c = std::min(i, k); c >= 1; --c) {
      row[static_cast<std::size_t>(c)] = static_cast<double>(c) * row[static_cast<std::size_t>(c)] +
                                         row[static_cast<std::size_t>(c) - 1];
    }
    row[0] = 0.0;
  }
  return row[static_cast<std::size_t>(k)];
}

MomentSummary sample_factorial_moments(const CountSeries& series, int m) {
  if (m < 1) throw std::invalid_argument("sample_factorial_moments: m must be at least 1");
  if (series.values.size() != series.mask.size()) {
    throw std::invalid_argument("sample_factorial_moments: values and mask differ in length");
  }
  std::vector<double> sums(static_cast<std::size_t>(m) + 1, 0.0);
  std::size_t observed = 0;
  for (std::size_t t = 0; t < series.values.size(); ++t) {
    if (series.mask[t] != 1) continue;
    ++observed;
    const double x = static_cast<double>(series.values[t]);
    double ff = 1.0;
    for (int k = 1; k <= m; ++k) {
      ff *= (x - static_cast<double>(k - 1));
      sums[static_cast<std::size_t>(k)] += ff;
    }
  }
  if (observed == 0) throw DegenerateInputError("sample_factorial_moments: every position is masked");
  MomentSummary out;
  out.m = m;
  out.n_observed = observed;
  out.tauhat = static_cast<double>(observed) / static_cast<double>(series.values.size());
  out.muhat.assign(static_cast<std::size_t>(m) + 1, 0.0);
  out.muhat[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    out.muhat[static_cast<std::size_t>(k)] = sums[static_cast<std::size_t>(k)] / static_cast<double>(observed);
  }
  return out;
}

double poisson_factorial_moment(double mu, int k) {
  if (!(mu > 0.0)) throw ParameterError("poisson_factorial_moment: mu must be positive");
  check_order(k, "poisson_factorial_moment");
  return std::pow(mu, k);
}

double binomial_factorial_moment(std::int64_t n, double pi, int k) {
  if (n < 1 || !(pi >= 0.0 && pi <= 1.0)) throw ParameterError("binomial_factorial_moment: invalid Bin(n, pi)");
  check_order(k, "binomial_factorial_moment");
  if (k > n) return 0.0;
  return falling_factorial_real(static_cast<double>(n), static_cast<unsigned>(k)) * std::pow(pi, k);
}

UnivariateMoments poisson_univariate_moments(double mu) {
  UnivariateMoments out{};
  for (int k = 0; k <= 6; ++k) out[static_cast<std::size_t>(k)] = poisson_factorial_moment(mu, k);
  return out;
}

UnivariateMoments binomial_univariate_moments(std::int64_t n, double pi) {
  UnivariateMoments out{};
  for (int k = 0; k <= 6; ++k) out[static_cast<std::size_t>(k)] = binomial_factorial_moment(n, pi, k);
  return out;
}

double bpoi_mixed_factorial(double mu, double rho, std::int64_t h, int k, int s) {
  if (!(mu > 0.0)) throw ParameterError("bpoi_mixed_factorial: mu must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("bpoi_mixed_factorial: rho must lie in [0, 1)");
  if (h < 1) throw ParameterError("bpoi_mixed_factorial: lag must be at least 1");
  check_order(k, "bpoi_mixed_factorial");
  check_order(s, "bpoi_mixed_factorial");
  const double q = std::pow(rho, static_cast<double>(h)) / mu;
  double sum = 0.0;
  double fact = 1.0;
  for (int i = 0; i <= std::min(k, s); ++i) {
    if (i > 0) fact *= i;
    sum += binomial_coefficient(k, i) * binomial_coefficient(s, i) * fact * std::pow(q, i);
  }
  return std::pow(mu, k) * std::pow(mu, s) * sum;
}

double bbin_mixed_factorial(std::int64_t n, double pi, double rho, std::int64_t h, int k, int s) {
  Bar1{n, pi, rho}.validate();
  if (h < 1) throw ParameterError("bbin_mixed_factorial: lag must be at least 1");
  check_order(k, "bbin_mixed_factorial");
  check_order(s, "bbin_mixed_factorial");
  if (k > n || s > n) return 0.0;
  const double lift = 1.0 + (1.0 - pi) / pi * std::pow(rho, static_cast<double>(h));
  const double denom = binomial_coefficient(n, s);
  double sum = 0.0;
  for (int i = 0; i <= std::min(k, s); ++i) {
    sum += binomial_coefficient(k, i) * binomial_coefficient(n - k, s - i) / denom * std::pow(lift, i);
  }
  return binomial_factorial_moment(n, pi, k) * binomial_factorial_moment(n, pi, s) * sum;
}

double lag0_mixed_factorial(const UnivariateMoments& mu, int k, int s) {
  if (k > s) std::swap(k, s);
  if (k < 0) throw std::invalid_argument("lag0_mixed_factorial: negative order");
  if (s > 3) throw std::invalid_argument("lag0_mixed_factorial: orders above 3 are not supported");
  if (k == 0) return mu[static_cast<std::size_t>(s)];
  const double m1 = mu[1], m2 = mu[2], m3 = mu[3], m4 = mu[4], m5 = mu[5], m6 = mu[6];
  switch (k * 10 + s) {
    case 11: return m2 + m1;
    case 12: return m3 + 2.0 * m2;
    case 22: return m4 + 4.0 * m3 + 2.0 * m2;
    case 13: return m4 + 3.0 * m3;
    case 23: return m5 + 6.0 * m4 + 6.0 * m3;
    case 33: return m6 + 9.0 * m5 + 18.0 * m4 + 6.0 * m3;
    default: break;
  }
  throw std::invalid_argument("lag0_mixed_factorial: unsupported order pair");
}

std::vector<double> raw_from_factorial(const std::vector<double>& factorial) {
  if (factorial.empty()) return {};
  if (factorial.size() > 7) throw std::invalid_argument("raw_from_factorial: order above 6");
  const int m = static_cast<int>(factorial.size()) - 1;
  std::vector<double> raw(factorial.size(), 0.0);
  raw[0] = 1.0;
  for (int j = 1; j <= m; ++j) {
    double acc = 0.0;
    for (int k = 1; k <= j; ++k) acc += stirling2(j, k) * factorial[static_cast<std::size_t>(k)];
    raw[static_cast<std::size_t>(j)] = acc;
  }
  return raw;
}

}  // namespace countdiag
