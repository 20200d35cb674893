#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "countdiag/asymptotics.hpp"
#include "countdiag/diagnostics.hpp"

namespace countdiag::testdata {

/**
 * @brief A published test decision: fitted null parameters, the statistic and the printed critical values.
 *
 * Only the printed bounds are compared; has_lower and has_upper say which those are.
 */
struct WorkedExample {
  const char* name;
  NullFamily family;
  std::int64_t n;
  IndexKind kind;
  std::size_t T;
  double mu_hat, rho_hat, tau_hat, r_hat;
  double statistic;
  bool has_lower;
  double lower;
  bool has_upper;
  double upper;
  Decision decision;
};

inline const std::vector<WorkedExample> kWorkedExamples = {
    {"peak-severity dispersion", NullFamily::BinomialAr1, 3, IndexKind::BinDispersion, 225, 0.6117, 0.3325, 0.916,
     0.0, 1.3451, false, 0.0, true, 1.1685, Decision::Reject},
    {"peak-severity skewness", NullFamily::BinomialAr1, 3, IndexKind::SkewBin, 225, 0.6117, 0.3325, 0.916, 0.0,
     0.3422, true, -0.1235, true, 0.7337, Decision::Retain},
    {"peak-severity dispersion ignoring missingness", NullFamily::BinomialAr1, 3, IndexKind::BinDispersion, 206,
     0.6117, 0.3605, 1.0, 0.0, 1.3451, false, 0.0, true, 1.1728, Decision::Reject},
    {"cloud-coverage dispersion", NullFamily::BinomialAr1, 8, IndexKind::BinDispersion, 744, 4.4804, 0.8285, 0.8898,
     0.8765, 2.6908, false, 0.0, true, 1.2169, Decision::Reject},
    {"cloud-coverage skewness", NullFamily::BinomialAr1, 8, IndexKind::SkewBin, 744, 4.4804, 0.8285, 0.8898, 0.8765,
     0.9788, false, 0.0, true, 0.7875, Decision::Reject},
};

/// One row of the compensation-data table (Poisson null, T = 120, fully observed mask dependence r = 0).
struct CompensationRow {
  double tau, mu_hat, rho_hat;
  double disp, disp_lower, disp_upper;
  double skew, skew_lower, skew_upper;
};

inline constexpr std::size_t kCompensationT = 120;

inline const std::vector<CompensationRow> kCompensationTable = {
    {1.00, 6.133, 0.558, 1.907, 0.621, 1.320, 1.328, 0.870, 1.108},
    {0.85, 6.343, 0.462, 1.853, 0.644, 1.308, 1.314, 0.881, 1.100},
    {0.70, 6.476, 0.302, 1.836, 0.658, 1.304, 1.306, 0.888, 1.098},
    {0.55, 6.591, 0.269, 1.977, 0.623, 1.334, 1.333, 0.879, 1.106},
    {0.40, 6.396, 0.295, 1.620, 0.557, 1.387, 1.164, 0.852, 1.126},
};

/// Fitted parameters for a worked example.
inline FittedParams fitted_for(const WorkedExample& e) {
  FittedParams f;
  f.mu_hat = e.mu_hat;
  f.rho_hat = e.rho_hat;
  f.tau_hat = e.tau_hat;
  f.r_hat = e.r_hat;
  f.T = e.T;
  f.n = e.n;
  return f;
}

inline FittedParams fitted_for(const CompensationRow& row) {
  FittedParams f;
  f.mu_hat = row.mu_hat;
  f.rho_hat = row.rho_hat;
  f.tau_hat = row.tau;
  f.r_hat = 0.0;
  f.T = kCompensationT;
  return f;
}

}  // namespace countdiag::testdata
