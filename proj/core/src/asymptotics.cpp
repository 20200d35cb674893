#include "countdiag/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "countdiag/core_model.hpp"
#include "countdiag/errors.hpp"

namespace countdiag {

namespace {

void check_markov(double tau, double r, double rho) {
  if (!(tau >= kMinTau && tau <= 1.0)) throw ParameterError("tau must lie in [0.01, 1]");
  if (!(r >= 0.0 && r < 1.0)) throw ParameterError("r must lie in [0, 1)");
  if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("rho must lie in [0, 1)");
}

void check_T(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("sample size T must be positive");
}

void check_order(int i, int j) {
  if (i < 1 || j < 1 || i > 3 || j > 3) throw std::invalid_argument("covariance orders must lie in 1..3");
}

LagTerm zero_term() { return LagTerm::from_polynomial(LagPolynomial{0.0, {}}); }

}  // namespace

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::PoiDispersion: return "poi-dispersion";
    case IndexKind::BinDispersion: return "bin-dispersion";
    case IndexKind::SkewPoi: return "skew-poi";
    case IndexKind::SkewBin: return "skew-bin";
  }
  return "unknown";
}

IndexKind index_kind_from_string(const std::string& name) {
  if (name == "poi-dispersion") return IndexKind::PoiDispersion;
  if (name == "bin-dispersion") return IndexKind::BinDispersion;
  if (name == "skew-poi") return IndexKind::SkewPoi;
  if (name == "skew-bin") return IndexKind::SkewBin;
  throw std::invalid_argument("unknown index kind '" + name +
                              "' (expected poi-dispersion, bin-dispersion, skew-poi or skew-bin)");
}

double IndexAsymptotics::sd() const { return std::sqrt(std::max(variance, 0.0)); }

LagTerm MomentOracle::centered_mixed(int k, int s) const {
  if (k == 0 || s == 0) return zero_term();
  const double limit = mu(k) * mu(s);
  auto f = mixed;
  auto eval = [f, k, s, limit](std::int64_t h) { return f(k, s, h) - limit; };
  if (mixed_polynomial) {
    LagPolynomial p = mixed_polynomial(k, s);
    if (!p.coeffs.empty()) p.coeffs[0] = 0.0;
    LagTerm t;
    t.poly = std::move(p);
    t.eval = eval;
    return t;
  }
  return LagTerm::from_function(eval);
}

MomentOracle MomentOracle::series_only() const {
  MomentOracle copy = *this;
  copy.mixed_polynomial = nullptr;
  return copy;
}

MomentOracle poisson_inar1_oracle(double mu, double rho) {
  PoiInar1{mu, rho}.validate();
  MomentOracle o;
  o.univariate = poisson_univariate_moments(mu);
  o.mixed = [mu, rho](int k, int s, std::int64_t h) { return bpoi_mixed_factorial(mu, rho, h, k, s); };
  o.mixed_polynomial = [mu, rho](int k, int s) {
    LagPolynomial p{rho, {}};
    const double base = std::pow(mu, k + s);
    double fact = 1.0;
    for (int i = 0; i <= std::min(k, s); ++i) {
      if (i > 0) fact *= i;
      p.coeffs.push_back(base * binomial_coefficient(k, i) * binomial_coefficient(s, i) * fact *
                         std::pow(mu, -i));
    }
    return p;
  };
  return o;
}

MomentOracle bar1_oracle(std::int64_t n, double pi, double rho) {
  Bar1{n, pi, rho}.validate();
  if (rho < 0.0) throw ParameterError("bar1_oracle: the asymptotics assume rho in [0, 1)");
  MomentOracle o;
  o.univariate = binomial_univariate_moments(n, pi);
  o.mixed = [n, pi, rho](int k, int s, std::int64_t h) { return bbin_mixed_factorial(n, pi, rho, h, k, s); };
  o.mixed_polynomial = [n, pi, rho](int k, int s) {
    LagPolynomial p{rho, {}};
    if (k > n || s > n) return p;
    const double base = binomial_factorial_moment(n, pi, k) * binomial_factorial_moment(n, pi, s);
    const double a = (1.0 - pi) / pi;
    const double denom = binomial_coefficient(n, s);
    const int top = std::min(k, s);
    p.coeffs.assign(static_cast<std::size_t>(top) + 1, 0.0);
    // (1 + a q)^i expanded in q = rho^h.
    for (int i = 0; i <= top; ++i) {
      const double w = binomial_coefficient(k, i) * binomial_coefficient(n - k, s - i) / denom;
      for (int j = 0; j <= i; ++j) {
        p.coeffs[static_cast<std::size_t>(j)] += base * w * binomial_coefficient(i, j) * std::pow(a, j);
      }
    }
    return p;
  };
  return o;
}

RawMomentOracle RawMomentOracle::from_factorial(const MomentOracle& oracle) {
  RawMomentOracle out;
  const std::vector<double> fac(oracle.univariate.begin(), oracle.univariate.begin() + 5);
  const std::vector<double> raw = raw_from_factorial(fac);
  for (std::size_t k = 0; k < 5; ++k) out.raw[k] = raw[k];
  out.centered_mixed = [oracle](int k, int l) {
    std::vector<std::pair<double, LagTerm>> parts;
    for (int a = 1; a <= k; ++a) {
      for (int b = 1; b <= l; ++b) {
        parts.emplace_back(stirling2(k, a) * stirling2(l, b), oracle.centered_mixed(a, b));
      }
    }
    return combine(parts, 0.0, 1.0);
  };
  return out;
}

double kappa(int s, double tau, double r, double rho) {
  if (s < 1) throw std::invalid_argument("kappa: s must be at least 1");
  check_markov(tau, r, rho);
  const double q = std::pow(rho, s);
  const double rq = r * q;
  return (1.0 / tau) * (1.0 + rq) / (1.0 - rq) + 2.0 * (1.0 - r) * q / ((1.0 - rq) * (1.0 - q));
}

double sigma_star(int i, int j, const MomentOracle& m, const MaskLaw& mask, const SeriesOptions& opts) {
  if (i < 0 || j < 0 || i > 3 || j > 3) throw std::invalid_argument("sigma_star: orders must lie in 0..3");
  validate_mask_law(mask);
  const double tau = mask_tau(mask);
  const double s00 = tau * (1.0 - tau) + 2.0 * mask_autocovariance_sum(mask, opts);
  if (i == 0 && j == 0) return s00;
  if (i == 0 || j == 0) return s00 * m.mu(std::max(i, j));
  const double lag0 = lag0_mixed_factorial(m.univariate, i, j) - m.mu(i) * m.mu(j);
  const LagTerm sum_term = combine({{1.0, m.centered_mixed(j, i)}, {1.0, m.centered_mixed(i, j)}}, 0.0, 1.0);
  return tau * lag0 + s00 * m.mu(i) * m.mu(j) + weighted_lag_sum(mask, sum_term, opts);
}

double clt_sigma_general(const CovarianceRequest& req) {
  check_order(req.i, req.j);
  validate_mask_law(req.mask);
  const MomentOracle& m = req.moments;
  const double tau = mask_tau(req.mask);
  const double lag0 = lag0_mixed_factorial(m.univariate, req.i, req.j) - m.mu(req.i) * m.mu(req.j);
  const LagTerm sum_term =
      combine({{1.0, m.centered_mixed(req.j, req.i)}, {1.0, m.centered_mixed(req.i, req.j)}}, 0.0, 1.0);
  return lag0 / tau + weighted_lag_sum(req.mask, sum_term, req.options) / (tau * tau);
}

std::array<std::array<double, 4>, 4> clt_sigma_matrix(const MomentOracle& moments, const MaskLaw& mask,
                                                      const SeriesOptions& opts) {
  std::array<std::array<double, 4>, 4> s{};
  for (int i = 1; i <= 3; ++i) {
    for (int j = i; j <= 3; ++j) {
      const double v = clt_sigma_general(CovarianceRequest{i, j, moments, mask, opts});
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      s[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  }
  return s;
}

double sigma_poisson_markov(int i, int j, double mu, double rho, double tau, double r) {
  check_order(i, j);
  if (i > j) std::swap(i, j);
  PoiInar1{mu, rho}.validate();
  const double k1 = kappa(1, tau, r, rho);
  const double s11 = mu * k1;
  const double s22 = 4.0 * mu * mu * s11 + 2.0 * mu * mu * kappa(2, tau, r, rho);
  switch (i * 10 + j) {
    case 11: return s11;
    case 12: return 2.0 * mu * s11;
    case 13: return 3.0 * mu * mu * s11;
    case 22: return s22;
    case 23: return 3.0 * mu * s22 - 6.0 * std::pow(mu, 3) * s11;
    case 33:
      return 9.0 * mu * mu * s22 - 27.0 * std::pow(mu, 4) * s11 + 6.0 * std::pow(mu, 3) * kappa(3, tau, r, rho);
    default: break;
  }
  throw std::invalid_argument("sigma_poisson_markov: unsupported order pair");
}

double sigma_binomial_markov(int i, int j, std::int64_t n, double pi, double rho, double tau, double r) {
  check_order(i, j);
  if (i > j) std::swap(i, j);
  Bar1{n, pi, rho}.validate();
  const double nn = static_cast<double>(n);
  const double q = 1.0 - pi;
  const double s11 = nn * pi * q * kappa(1, tau, r, rho);
  const double s22 = 4.0 * (nn - 1.0) * (nn - 1.0) * pi * pi * s11 +
                     2.0 * nn * (nn - 1.0) * q * q * pi * pi * kappa(2, tau, r, rho);
  switch (i * 10 + j) {
    case 11: return s11;
    case 12: return 2.0 * (nn - 1.0) * pi * s11;
    case 13: return 3.0 * (nn - 1.0) * (nn - 2.0) * pi * pi * s11;
    case 22: return s22;
    case 23: return 3.0 * (nn - 2.0) * pi * s22 - 6.0 * (nn - 1.0) * (nn - 1.0) * (nn - 2.0) * std::pow(pi, 3) * s11;
    case 33:
      return 9.0 * (nn - 2.0) * (nn - 2.0) * pi * pi * s22 -
             27.0 * std::pow((nn - 1.0) * (nn - 2.0), 2) * std::pow(pi, 4) * s11 +
             6.0 * nn * (nn - 1.0) * (nn - 2.0) * std::pow(q * pi, 3) * kappa(3, tau, r, rho);
    default: break;
  }
  throw std::invalid_argument("sigma_binomial_markov: unsupported order pair");
}

IndexAsymptotics poi_dispersion_asym_general(const MomentOracle& m, const MaskLaw& mask, double T,
                                             const SeriesOptions& opts) {
  check_T(T);
  validate_mask_law(mask);
  const double tau = mask_tau(mask);
  const double mu = m.mu(1), m2 = m.mu(2), m3 = m.mu(3), m4 = m.mu(4);
  if (!(mu > 0.0)) throw ParameterError("poi_dispersion_asym_general: mean must be positive");
  const double a = m2 / mu + mu;
  const double mu4 = std::pow(mu, 4);
  const double scale = a * a * mu * mu + mu4 + m2 * m2;

  // Summand a^2 mu_(1,1) - a (mu_(2,1) + mu_(1,2)) + mu_(2,2) - mu^4, written on centered terms.
  const LagTerm var_term = combine(
      {{a * a, m.centered_mixed(1, 1)}, {-a, m.centered_mixed(2, 1)}, {-a, m.centered_mixed(1, 2)},
       {1.0, m.centered_mixed(2, 2)}},
      a * a * mu * mu - 2.0 * a * mu * m2 + m2 * m2 - mu4, scale);
  const double var_bracket = a * a * (m2 + mu) - 2.0 * a * (m3 + 2.0 * m2) + m4 + 4.0 * m3 + 2.0 * m2 - mu4 +
                             (2.0 / tau) * weighted_lag_sum(mask, var_term, opts);

  // Summand mu_(2) mu_(1,1) - (mu/2)(mu_(2,1) + mu_(1,2)).
  const LagTerm bias_term = combine(
      {{m2, m.centered_mixed(1, 1)}, {-mu / 2.0, m.centered_mixed(2, 1)}, {-mu / 2.0, m.centered_mixed(1, 2)}},
      m2 * mu * mu - mu * mu * m2, m2 * mu * mu);
  const double bias_bracket = m2 * m2 - mu * (m2 + m3) + (2.0 / tau) * weighted_lag_sum(mask, bias_term, opts);

  IndexAsymptotics out;
  out.kind = IndexKind::PoiDispersion;
  out.null_value = 1.0;
  out.T = T;
  out.variance = var_bracket / (T * tau * mu * mu);
  out.bias = bias_bracket / (T * tau * std::pow(mu, 3));
  return out;
}

IndexAsymptotics poi_dispersion_asym_markov(double mu, double rho, double tau, double r, double T) {
  check_T(T);
  PoiInar1{mu, rho}.validate();
  IndexAsymptotics out;
  out.kind = IndexKind::PoiDispersion;
  out.null_value = 1.0;
  out.T = T;
  out.variance = 2.0 * kappa(2, tau, r, rho) / T;
  out.bias = -kappa(1, tau, r, rho) / T;
  return out;
}

IndexAsymptotics bin_dispersion_asym_general(std::int64_t n, const MomentOracle& m, const MaskLaw& mask,
                                             double T, const SeriesOptions& opts) {
  check_T(T);
  validate_mask_law(mask);
  if (n < 2) throw ParameterError("bin_dispersion_asym_general: n must be at least 2");
  const double nn = static_cast<double>(n);
  const double tau = mask_tau(mask);
  const double mu = m.mu(1), m2 = m.mu(2), m3 = m.mu(3), m4 = m.mu(4);
  if (!(mu > 0.0 && mu < nn)) throw ParameterError("bin_dispersion_asym_general: mean must lie in (0, n)");
  const double nm = nn - mu;
  const double A = mu * mu * (1.0 - nn) - nn * m2 + 2.0 * mu * m2;
  const double B = std::pow(mu, 3) * (1.0 - nn) + nn * nn * m2 + 3.0 * mu * m2 * (mu - nn);
  const double c12 = mu * nm;
  const double c22 = mu * mu * nm * nm;

  const double var_scale = A * A * mu * mu + std::abs(c12 * A) * mu * m2 + c22 * m2 * m2;
  const LagTerm var_term = combine(
      {{A * A, m.centered_mixed(1, 1)}, {c12 * A, m.centered_mixed(2, 1)}, {c12 * A, m.centered_mixed(1, 2)},
       {c22, m.centered_mixed(2, 2)}},
      0.0, var_scale);
  const double var_bracket = A * A * (m2 + mu - mu * mu) + 2.0 * c12 * A * (m3 + 2.0 * m2 - mu * m2) +
                             c22 * (m4 + 4.0 * m3 + 2.0 * m2 - m2 * m2) +
                             (2.0 / tau) * weighted_lag_sum(mask, var_term, opts);

  const double c2 = c12 * (2.0 * mu - nn);
  const LagTerm bias_term = combine(
      {{2.0 * B, m.centered_mixed(1, 1)}, {c2, m.centered_mixed(2, 1)}, {c2, m.centered_mixed(1, 2)}}, 0.0, 1.0);
  // The lag sum carries 1/tau (not 1/tau^2): the factor 2 already sits inside the summand.
  const double bias_bracket = B * (m2 + mu - mu * mu) + c2 * (m3 + 2.0 * m2 - mu * m2) +
                              (1.0 / tau) * weighted_lag_sum(mask, bias_term, opts);

  IndexAsymptotics out;
  out.kind = IndexKind::BinDispersion;
  out.null_value = 1.0;
  out.T = T;
  out.variance = nn * nn * var_bracket / (T * tau * std::pow(mu, 4) * std::pow(nm, 4));
  out.bias = nn * bias_bracket / (T * tau * std::pow(mu, 3) * std::pow(nm, 3));
  return out;
}

IndexAsymptotics bin_dispersion_asym_markov(std::int64_t n, double pi, double rho, double tau, double r,
                                            double T) {
  check_T(T);
  Bar1{n, pi, rho}.validate();
  const double shrink = 1.0 - 1.0 / static_cast<double>(n);
  IndexAsymptotics out;
  out.kind = IndexKind::BinDispersion;
  out.null_value = 1.0;
  out.T = T;
  out.variance = 2.0 * shrink * kappa(2, tau, r, rho) / T;
  out.bias = -shrink * kappa(1, tau, r, rho) / T;
  return out;
}

IndexAsymptotics skew_asym_general(const MomentOracle& m, const MaskLaw& mask, double T, IndexKind kind,
                                   const SeriesOptions& opts) {
  check_T(T);
  if (kind != IndexKind::SkewPoi && kind != IndexKind::SkewBin) {
    throw std::invalid_argument("skew_asym_general: kind must be a skewness index");
  }
  const double mu = m.mu(1), m2 = m.mu(2), m3 = m.mu(3);
  if (!(mu > 0.0 && m2 > 0.0)) throw ParameterError("skew_asym_general: mu and mu_(2) must be positive");
  const auto s = clt_sigma_matrix(m, mask, opts);
  const double c = 1.0 / (m2 * mu);
  const std::array<double, 4> d{0.0, -c * m3 / mu, -c * m3 / m2, c};
  const double h11 = c * 2.0 * m3 / (mu * mu);
  const double h12 = c * m3 / (mu * m2);
  const double h13 = -c / mu;
  const double h22 = c * 2.0 * m3 / (m2 * m2);
  const double h23 = -c / m2;

  double var = 0.0;
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) var += d[i] * d[j] * s[i][j];
  }
  const double bias = 0.5 * (h11 * s[1][1] + h22 * s[2][2]) + h12 * s[1][2] + h13 * s[1][3] + h23 * s[2][3];

  IndexAsymptotics out;
  out.kind = kind;
  out.null_value = m3 / (m2 * mu);
  out.T = T;
  out.variance = var / T;
  out.bias = bias / T;
  return out;
}

IndexAsymptotics skew_asym_poisson_markov(double mu, double rho, double tau, double r, double T) {
  check_T(T);
  PoiInar1{mu, rho}.validate();
  const double k1 = kappa(1, tau, r, rho);
  const double k2 = kappa(2, tau, r, rho);
  const double k3 = kappa(3, tau, r, rho);
  IndexAsymptotics out;
  out.kind = IndexKind::SkewPoi;
  out.null_value = 1.0;
  out.T = T;
  out.variance = (8.0 * mu * k2 + 6.0 * k3) / (T * std::pow(mu, 3));
  out.bias = -2.0 / (T * mu * mu) * (mu * k1 + 2.0 * k2);
  return out;
}

IndexAsymptotics skew_asym_binomial_markov(std::int64_t n, double pi, double rho, double tau, double r,
                                           double T) {
  check_T(T);
  Bar1{n, pi, rho}.validate();
  const double nn = static_cast<double>(n);
  const double mu = nn * pi;
  const double nm = nn - mu;
  const double k1 = kappa(1, tau, r, rho);
  const double k2 = kappa(2, tau, r, rho);
  const double k3 = kappa(3, tau, r, rho);
  IndexAsymptotics out;
  out.kind = IndexKind::SkewBin;
  out.null_value = 1.0 - 2.0 / nn;
  out.T = T;
  out.variance = ((nn - 2.0) * std::pow(nm, 3) / ((nn - 1.0) * std::pow(nn, 3))) / (T * std::pow(mu, 3)) *
                 (((nn - 2.0) / nm) * 8.0 * mu * k2 + 6.0 * k3);
  out.bias = -((nn - 2.0) * nm * nm / ((nn - 1.0) * nn * nn)) * (2.0 / (T * mu * mu)) *
             (((nn - 1.0) / nm) * mu * k1 + 2.0 * k2);
  return out;
}

IndexAsymptotics raw_poi_dispersion_asym(const RawMomentOracle& m, const MaskLaw& mask, double T,
                                         const SeriesOptions& opts) {
  check_T(T);
  validate_mask_law(mask);
  const double tau = mask_tau(mask);
  const double mu = m.raw[1], n2 = m.raw[2], n3 = m.raw[3], n4 = m.raw[4];
  if (!(mu > 0.0)) throw ParameterError("raw_poi_dispersion_asym: mean must be positive");
  const double b = n2 / (mu * mu) + 1.0;

  const LagTerm var_term = combine({{b * b, m.centered_mixed(1, 1)},
                                    {1.0 / (mu * mu), m.centered_mixed(2, 2)},
                                    {-b / mu, m.centered_mixed(2, 1)},
                                    {-b / mu, m.centered_mixed(1, 2)}},
                                   0.0, 1.0);
  const double var_bracket = b * b * (n2 - mu * mu) - (2.0 / mu) * b * (n3 - mu * n2) +
                             (n4 - n2 * n2) / (mu * mu) + (2.0 / tau) * weighted_lag_sum(mask, var_term, opts);

  const LagTerm bias_term = combine(
      {{n2, m.centered_mixed(1, 1)}, {-mu / 2.0, m.centered_mixed(2, 1)}, {-mu / 2.0, m.centered_mixed(1, 2)}},
      n2 * mu * mu - mu * mu * n2, n2 * mu * mu);
  const double bias_bracket = n2 * n2 - n3 * mu + (2.0 / tau) * weighted_lag_sum(mask, bias_term, opts);

  IndexAsymptotics out;
  out.kind = IndexKind::PoiDispersion;
  out.null_value = 1.0;
  out.T = T;
  out.variance = var_bracket / (T * tau);
  out.bias = bias_bracket / (T * tau * std::pow(mu, 3));
  return out;
}

}  // namespace countdiag
