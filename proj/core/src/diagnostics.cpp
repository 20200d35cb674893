#include "countdiag/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "countdiag/errors.hpp"

namespace countdiag {

namespace {

constexpr double kRhoCeiling = 1.0 - 1e-9;

bool is_binomial_kind(IndexKind kind) { return kind == IndexKind::BinDispersion || kind == IndexKind::SkewBin; }

double clamp_unit(double value, const char* name, std::vector<std::string>& warnings) {
  if (value < 0.0) {
    std::ostringstream msg;
    msg << name << " = " << value << " is negative; clamped to 0";
    warnings.push_back(msg.str());
    return 0.0;
  }
  if (value > kRhoCeiling) {
    std::ostringstream msg;
    msg << name << " = " << value << " is not below 1; clamped to 1 - 1e-9";
    warnings.push_back(msg.str());
    return kRhoCeiling;
  }
  return value;
}

}  // namespace

std::string to_string(NullFamily family) {
  return family == NullFamily::PoissonInar1 ? "poisson" : "binomial";
}

std::string to_string(Sidedness sided) {
  switch (sided) {
    case Sidedness::TwoSided: return "two-sided";
    case Sidedness::Upper: return "upper";
    case Sidedness::Lower: return "lower";
  }
  return "two-sided";
}

std::string to_string(Decision decision) { return decision == Decision::Reject ? "reject" : "retain"; }

NullFamily null_family_from_string(const std::string& name) {
  if (name == "poisson") return NullFamily::PoissonInar1;
  if (name == "binomial") return NullFamily::BinomialAr1;
  throw std::invalid_argument("unknown null family '" + name + "' (expected poisson or binomial)");
}

Sidedness sidedness_from_string(const std::string& name) {
  if (name == "two-sided") return Sidedness::TwoSided;
  if (name == "upper") return Sidedness::Upper;
  if (name == "lower") return Sidedness::Lower;
  throw std::invalid_argument("unknown sidedness '" + name + "' (expected two-sided, upper or lower)");
}

void NullSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("NullSpec: alpha must lie in (0, 1)");
  if (family == NullFamily::BinomialAr1 && n < 2) {
    throw ParameterError("NullSpec: the binomial family needs an upper bound n >= 2");
  }
  if (r_override && !(*r_override >= 0.0 && *r_override < 1.0)) {
    throw ParameterError("NullSpec: r override must lie in [0, 1)");
  }
}

double index_from_moments(const MomentSummary& m, IndexKind kind, std::int64_t n) {
  const double mu = m.mean();
  switch (kind) {
    case IndexKind::PoiDispersion:
      if (!(mu > 0.0)) throw DegenerateInputError("Poisson dispersion index: all observed values are zero");
      return m.factorial(2) / mu - mu + 1.0;
    case IndexKind::BinDispersion: {
      if (n < 1) throw ParameterError("binomial dispersion index: n must be positive");
      const double nn = static_cast<double>(n);
      if (!(mu > 0.0 && mu < nn)) {
        throw DegenerateInputError("binomial dispersion index: sample mean is 0 or n");
      }
      return (m.factorial(2) + mu - mu * mu) / (mu * (1.0 - mu / nn));
    }
    case IndexKind::SkewPoi:
    case IndexKind::SkewBin: {
      if (m.m < 3) throw std::invalid_argument("skewness index: moments up to order 3 are required");
      const double m2 = m.factorial(2);
      if (!(m2 > 0.0) || !(mu > 0.0)) {
        throw DegenerateInputError("skewness index: all observed values are at most 1");
      }
      return m.factorial(3) / (m2 * mu);
    }
  }
  throw std::invalid_argument("unknown index kind");
}

double index_poi_dispersion(const CountSeries& series) {
  return index_from_moments(sample_factorial_moments(series, 2), IndexKind::PoiDispersion);
}

double index_bin_dispersion(const CountSeries& series, std::int64_t n) {
  return index_from_moments(sample_factorial_moments(series, 2), IndexKind::BinDispersion, n);
}

double index_skew(const CountSeries& series) {
  return index_from_moments(sample_factorial_moments(series, 3), IndexKind::SkewPoi);
}

std::vector<IndexKind> indices_for(NullFamily family) {
  if (family == NullFamily::PoissonInar1) return {IndexKind::PoiDispersion, IndexKind::SkewPoi};
  return {IndexKind::BinDispersion, IndexKind::SkewBin};
}

FittedParams fit_null_params(const CountSeries& series, AcfNormalization norm, std::optional<double> r_override) {
  series.validate();
  FittedParams fit;
  fit.T = series.size();
  fit.mu_hat = sample_factorial_moments(series, 1).mean();
  fit.tau_hat = estimate_tau(series.mask);
  if (series.size() < 2) throw DegenerateInputError("fit_null_params: need at least two time points");
  fit.rho_hat = clamp_unit(dr_acf(series, 1, norm).rho_hat[1], "rho-hat", fit.warnings);
  if (r_override) {
    fit.r_hat = *r_override;
  } else if (fit.tau_hat == 1.0) {
    fit.r_hat = 0.0;
  } else {
    fit.r_hat = clamp_unit(estimate_r(series.mask), "r-hat", fit.warnings);
  }
  return fit;
}

IndexAsymptotics null_asymptotics(IndexKind kind, const FittedParams& f) {
  const double T = static_cast<double>(f.T);
  if (is_binomial_kind(kind)) {
    if (f.n < 2) throw ParameterError("binomial null: n must be at least 2");
    const double pi = f.mu_hat / static_cast<double>(f.n);
    if (kind == IndexKind::BinDispersion) return bin_dispersion_asym_markov(f.n, pi, f.rho_hat, f.tau_hat, f.r_hat, T);
    return skew_asym_binomial_markov(f.n, pi, f.rho_hat, f.tau_hat, f.r_hat, T);
  }
  if (kind == IndexKind::PoiDispersion) return poi_dispersion_asym_markov(f.mu_hat, f.rho_hat, f.tau_hat, f.r_hat, T);
  return skew_asym_poisson_markov(f.mu_hat, f.rho_hat, f.tau_hat, f.r_hat, T);
}

TestReport critical_report(IndexKind kind, const NullSpec& null, const FittedParams& fitted, double statistic) {
  null.validate();
  if (is_binomial_kind(kind) != (null.family == NullFamily::BinomialAr1)) {
    throw std::invalid_argument("index kind " + to_string(kind) + " does not match the " + to_string(null.family) +
                                " null");
  }
  FittedParams f = fitted;
  if (null.family == NullFamily::BinomialAr1) f.n = null.n;
  const IndexAsymptotics asym = null_asymptotics(kind, f);
  const double z = normal_quantile(1.0 - null.alpha / 2.0);

  TestReport rep;
  rep.kind = kind;
  rep.statistic = statistic;
  rep.null_value = asym.null_value;
  rep.bias = asym.bias;
  rep.sd = asym.sd();
  rep.lower_critical = asym.mean() - z * rep.sd;
  rep.upper_critical = asym.mean() + z * rep.sd;
  rep.alpha = null.alpha;
  rep.sidedness = null.sidedness;
  rep.fitted = std::move(f);
  bool reject = false;
  switch (null.sidedness) {
    case Sidedness::TwoSided: reject = statistic < rep.lower_critical || statistic > rep.upper_critical; break;
    case Sidedness::Upper: reject = statistic > rep.upper_critical; break;
    case Sidedness::Lower: reject = statistic < rep.lower_critical; break;
  }
  rep.decision = reject ? Decision::Reject : Decision::Retain;
  return rep;
}

TestReport test_index(const CountSeries& series, const NullSpec& null, IndexKind kind) {
  null.validate();
  series.validate(null.family == NullFamily::BinomialAr1 ? null.n : 0);
  const std::int64_t n = null.family == NullFamily::BinomialAr1 ? null.n : 0;
  const double statistic = index_from_moments(sample_factorial_moments(series, 3), kind, n);

  FittedParams fitted;
  if (null.ignore_missing) {
    fitted = fit_null_params(series.compacted(), null.acf_normalization, 0.0);
  } else {
    fitted = fit_null_params(series, null.acf_normalization, null.r_override);
  }
  fitted.n = n;
  return critical_report(kind, null, fitted, statistic);
}

}  // namespace countdiag
