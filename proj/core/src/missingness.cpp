#include "countdiag/missingness.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "countdiag/errors.hpp"
#include "countdiag/moments.hpp"

namespace countdiag {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("normal_quantile: p must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double estimate_tau(const std::vector<std::uint8_t>& mask) {
  if (mask.empty()) throw DegenerateInputError("estimate_tau: empty mask");
  std::size_t ones = 0;
  for (auto o : mask) ones += (o == 1);
  return static_cast<double>(ones) / static_cast<double>(mask.size());
}

double estimate_r(const std::vector<std::uint8_t>& mask) {
  if (mask.size() < 2) throw DegenerateInputError("estimate_r: need at least two mask entries");
  const double tau = estimate_tau(mask);
  if (tau == 0.0 || tau == 1.0) {
    throw DegenerateInputError(
        "estimate_r: constant mask, dependence parameter undefined; supply r = 0 explicitly");
  }
  const double T = static_cast<double>(mask.size());
  double c0 = 0.0;
  double c1 = 0.0;
  for (std::size_t t = 0; t < mask.size(); ++t) {
    const double d = static_cast<double>(mask[t]) - tau;
    c0 += d * d;
    if (t + 1 < mask.size()) c1 += d * (static_cast<double>(mask[t + 1]) - tau);
  }
  return (c1 / T) / (c0 / T);
}

double realized_tau_lag(const std::vector<std::uint8_t>& mask, std::size_t lag) {
  if (mask.empty()) throw DegenerateInputError("realized_tau_lag: empty mask");
  std::size_t pairs = 0;
  for (std::size_t t = 0; t + lag < mask.size(); ++t) pairs += (mask[t] == 1 && mask[t + lag] == 1);
  return static_cast<double>(pairs) / static_cast<double>(mask.size());
}

namespace {

struct LagSums {
  double cross = 0.0;
  std::size_t pairs = 0;
};

LagSums lag_sums(const CountSeries& series, std::size_t lag, double mean) {
  LagSums out;
  const auto& x = series.values;
  const auto& o = series.mask;
  for (std::size_t t = 0; t + lag < x.size(); ++t) {
    if (o[t] == 1 && o[t + lag] == 1) {
      out.cross += (static_cast<double>(x[t]) - mean) * (static_cast<double>(x[t + lag]) - mean);
      ++out.pairs;
    }
  }
  return out;
}

double normalize(const LagSums& s, std::size_t T, AcfNormalization norm) {
  if (norm == AcfNormalization::SeriesLength) return s.cross / static_cast<double>(T);
  if (s.pairs == 0) throw DegenerateInputError("autocovariance: no jointly observed pair at this lag");
  return s.cross / static_cast<double>(s.pairs);
}

}  // namespace

double dr_autocovariance(const CountSeries& series, std::size_t lag, AcfNormalization norm) {
  if (lag >= series.size()) throw std::invalid_argument("dr_autocovariance: lag must be below the series length");
  const double mean = sample_factorial_moments(series, 1).mean();
  return normalize(lag_sums(series, lag, mean), series.size(), norm);
}

AcfEstimate dr_acf(const CountSeries& series, std::size_t max_lag, AcfNormalization norm) {
  if (max_lag >= series.size()) throw std::invalid_argument("dr_acf: max lag must be below the series length");
  const double mean = sample_factorial_moments(series, 1).mean();
  const double c0 = normalize(lag_sums(series, 0, mean), series.size(), norm);
  if (!(c0 > 0.0)) throw DegenerateInputError("dr_acf: observed values have zero variance");
  AcfEstimate out;
  out.T = series.size();
  out.normalization = norm;
  out.rho_hat.resize(max_lag + 1);
  out.tau_lag.resize(max_lag + 1);
  out.rho_hat[0] = 1.0;
  out.tau_lag[0] = realized_tau_lag(series.mask, 0);
  for (std::size_t l = 1; l <= max_lag; ++l) {
    out.rho_hat[l] = normalize(lag_sums(series, l, mean), series.size(), norm) / c0;
    out.tau_lag[l] = realized_tau_lag(series.mask, l);
  }
  return out;
}

std::vector<double> durbin_levinson_pacf(const std::vector<double>& acf) {
  const std::size_t L = acf.size();
  if (L == 0) throw std::invalid_argument("durbin_levinson_pacf: need at least one lag");
  std::vector<double> pacf(L);
  std::vector<double> phi(L + 1, 0.0);
  std::vector<double> prev(L + 1, 0.0);
  double v = 1.0;
  for (std::size_t k = 1; k <= L; ++k) {
    if (!(v > 0.0)) {
      throw NumericalDegeneracyError("durbin_levinson_pacf: singular Toeplitz step at lag " + std::to_string(k));
    }
    double num = acf[k - 1];
    for (std::size_t j = 1; j < k; ++j) num -= prev[j] * acf[k - 1 - j];
    const double phikk = num / v;
    phi[k] = phikk;
    for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
    pacf[k - 1] = phikk;
    v *= (1.0 - phikk * phikk);
    if (std::abs(phikk) >= 1.0 && k < L) {
      throw NumericalDegeneracyError("durbin_levinson_pacf: |phi_kk| = 1 at lag " + std::to_string(k));
    }
    prev = phi;
  }
  return pacf;
}

AcfBand acf_critical_band(const std::vector<double>& tau_lag, std::size_t T, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("acf_critical_band: alpha must lie in (0, 1)");
  if (T == 0) throw ParameterError("acf_critical_band: T must be positive");
  const double z = normal_quantile(1.0 - alpha / 2.0);
  AcfBand band;
  band.half_width.assign(tau_lag.size(), 0.0);
  for (std::size_t l = 1; l < tau_lag.size(); ++l) {
    if (!(tau_lag[l] > 0.0)) {
      throw DegenerateInputError("acf_critical_band: no jointly observed pair at lag " + std::to_string(l));
    }
    band.half_width[l] = z / std::sqrt(static_cast<double>(T) * tau_lag[l]);
  }
  return band;
}

}  // namespace countdiag
