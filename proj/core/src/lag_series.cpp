#include "countdiag/lag_series.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "countdiag/errors.hpp"

namespace countdiag {

double LagPolynomial::operator()(std::int64_t h) const {
  const double base = std::pow(decay, static_cast<double>(h));
  double acc = 0.0;
  double power = 1.0;
  for (double c : coeffs) {
    acc += c * power;
    power *= base;
  }
  return acc;
}

double mask_tau(const MaskLaw& law) {
  return std::visit([](const auto& m) { return m.tau; }, law);
}

double mask_tau_lag(const MaskLaw& law, std::int64_t h) {
  if (h == 0) return mask_tau(law);
  if (const auto* markov = std::get_if<MarkovMask>(&law)) {
    return markov->tau * markov->tau +
           markov->tau * (1.0 - markov->tau) * std::pow(markov->r, static_cast<double>(std::abs(h)));
  }
  return std::get<LagSequenceMask>(law).tau_lag(std::abs(h));
}

void validate_mask_law(const MaskLaw& law) {
  const double tau = mask_tau(law);
  if (!(tau >= kMinTau && tau <= 1.0)) {
    throw ParameterError("mask law: tau must lie in [0.01, 1]; smaller values are numerically meaningless");
  }
  if (const auto* markov = std::get_if<MarkovMask>(&law)) {
    if (!(markov->r >= 0.0 && markov->r < 1.0)) throw ParameterError("mask law: r must lie in [0, 1)");
  } else if (!std::get<LagSequenceMask>(law).tau_lag) {
    throw ParameterError("mask law: lag sequence is not set");
  }
}

LagSequenceMask as_sequence(const MarkovMask& law) {
  return LagSequenceMask{law.tau, [law](std::int64_t h) {
                           return law.tau * law.tau +
                                  law.tau * (1.0 - law.tau) * std::pow(law.r, static_cast<double>(h));
                         }};
}

LagTerm LagTerm::from_polynomial(LagPolynomial p) {
  LagTerm t;
  t.eval = [p](std::int64_t h) { return p(h); };
  t.poly = std::move(p);
  return t;
}

LagTerm LagTerm::from_function(std::function<double(std::int64_t)> f) {
  LagTerm t;
  t.eval = std::move(f);
  return t;
}

LagTerm LagTerm::series_only() const { return from_function(eval); }

LagTerm combine(const std::vector<std::pair<double, LagTerm>>& parts, double constant, double scale) {
  const double limit_tol = 1e-9 * std::max(std::abs(scale), std::numeric_limits<double>::min());
  if (std::abs(constant) > limit_tol) {
    throw ParameterError("lag term does not vanish at infinite lag (moments do not factorize)");
  }
  std::vector<std::pair<double, std::function<double(std::int64_t)>>> fs;
  fs.reserve(parts.size());
  for (const auto& [w, term] : parts) fs.emplace_back(w, term.eval);
  LagTerm out = LagTerm::from_function([fs](std::int64_t h) {
    double acc = 0.0;
    for (const auto& [w, f] : fs) acc += w * f(h);
    return acc;
  });

  // Empty polynomials (identically zero terms) are compatible with any decay.
  bool all_poly = !parts.empty();
  std::optional<double> decay;
  for (const auto& [w, term] : parts) {
    if (!term.poly) {
      all_poly = false;
      break;
    }
    if (term.poly->coeffs.empty()) continue;
    if (decay && *decay != term.poly->decay) {
      all_poly = false;
      break;
    }
    decay = term.poly->decay;
  }
  if (all_poly) {
    LagPolynomial p;
    p.decay = decay.value_or(0.0);
    for (const auto& [w, term] : parts) {
      if (term.poly->coeffs.size() > p.coeffs.size()) p.coeffs.resize(term.poly->coeffs.size(), 0.0);
      for (std::size_t j = 0; j < term.poly->coeffs.size(); ++j) p.coeffs[j] += w * term.poly->coeffs[j];
    }
    if (!p.coeffs.empty()) p.coeffs[0] = 0.0;
    out.poly = std::move(p);
  }
  return out;
}

namespace {

double truncated_sum(const std::function<double(std::int64_t)>& term, const SeriesOptions& opts) {
  double sum = 0.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::int64_t h = 1; h <= opts.max_lag; ++h) {
    const double t = term(h);
    sum += t;
    const double a = std::abs(t);
    if (h >= 3) {
      const double b = std::abs(prev);
      if (a == 0.0 && b == 0.0) return sum;
      const double q = b > 0.0 ? a / b : 0.0;
      if (q < 1.0) {
        const double tail = a * q / (1.0 - q);
        if (tail <= opts.tolerance * std::abs(sum) || tail <= std::numeric_limits<double>::denorm_min()) {
          return sum;
        }
      }
    }
    prev = t;
  }
  throw ConvergenceError("lag series did not converge within " + std::to_string(opts.max_lag) + " lags");
}

/// sum_{h >= 1} x^h for |x| < 1.
double geometric(double x) {
  if (!(std::abs(x) < 1.0)) throw ConvergenceError("geometric lag sum: ratio must be below 1");
  return x / (1.0 - x);
}

}  // namespace

double weighted_lag_sum(const MaskLaw& law, const LagTerm& f, const SeriesOptions& opts) {
  validate_mask_law(law);
  const auto* markov = std::get_if<MarkovMask>(&law);
  if (markov && f.poly) {
    const LagPolynomial& p = *f.poly;
    if (!p.coeffs.empty() && p.coeffs[0] != 0.0) {
      throw ParameterError("weighted_lag_sum: polynomial has a non-vanishing constant term");
    }
    const double tau = markov->tau;
    double sum = 0.0;
    double x = 1.0;
    for (std::size_t j = 1; j < p.coeffs.size(); ++j) {
      x *= p.decay;
      if (p.coeffs[j] == 0.0) continue;
      sum += p.coeffs[j] * (tau * tau * geometric(x) + tau * (1.0 - tau) * geometric(markov->r * x));
    }
    return sum;
  }
  return truncated_sum([&](std::int64_t h) { return mask_tau_lag(law, h) * f.eval(h); }, opts);
}

double mask_autocovariance_sum(const MaskLaw& law, const SeriesOptions& opts) {
  validate_mask_law(law);
  const double tau = mask_tau(law);
  if (const auto* markov = std::get_if<MarkovMask>(&law)) {
    return tau * (1.0 - tau) * geometric(markov->r);
  }
  const auto& seq = std::get<LagSequenceMask>(law);
  return truncated_sum([&](std::int64_t h) { return seq.tau_lag(h) - tau * tau; }, opts);
}

}  // namespace countdiag
