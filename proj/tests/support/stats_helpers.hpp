#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace countdiag::testing_support {

inline double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

/// Standard error of the mean by non-overlapping batch means (robust to serial dependence).
inline double batch_means_se(const std::vector<double>& x, std::size_t batches = 100) {
  const std::size_t len = x.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += x[i];
    means[b] = s / static_cast<double>(len);
  }
  const double m = mean_of(means);
  double ss = 0.0;
  for (double v : means) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
}

/// Classical sample autocorrelation with 1/T normalization.
inline double sample_acf(const std::vector<double>& x, std::size_t lag) {
  const double m = mean_of(x);
  double c0 = 0.0;
  double cl = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    c0 += (x[t] - m) * (x[t] - m);
    if (t + lag < x.size()) cl += (x[t] - m) * (x[t + lag] - m);
  }
  return cl / c0;
}

/// Bartlett standard error of the lag-h sample autocorrelation of an AR(1)-type ACF rho^h.
inline double bartlett_se(double rho, std::size_t h, std::size_t T) {
  const double r2 = rho * rho;
  const double r2h = std::pow(rho, 2.0 * static_cast<double>(h));
  const double v = (1.0 + r2) * (1.0 - r2h) / (1.0 - r2) - 2.0 * static_cast<double>(h) * r2h;
  return std::sqrt(v / static_cast<double>(T));
}

template <typename Int>
std::vector<double> to_double(const std::vector<Int>& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace countdiag::testing_support
