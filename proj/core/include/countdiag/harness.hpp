#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "countdiag/asymptotics.hpp"
#include "countdiag/core_model.hpp"

namespace countdiag {

/** @brief One Monte Carlo cell: model, mask law, length and indices to evaluate. */
struct Scenario {
  ModelSpec model = PoiInar1{3.0, 0.5};
  MissingSpec missing{};
  std::size_t T = 100;
  std::vector<IndexKind> indices;
  std::size_t replications = 10000;
  std::uint64_t master_seed = 0;

  void validate() const;
  /// Canonical text of model, mask and T; the indices and R do not enter it.
  std::string fingerprint() const;
};

/** @brief Simulated and asymptotic moments of one index. */
struct IndexSummary {
  IndexKind kind = IndexKind::PoiDispersion;
  double sim_mean = 0.0;
  std::optional<double> sim_sd;  ///< Empty when fewer than two replications succeeded.
  double asym_mean = 0.0;
  double asym_sd = 0.0;
  std::size_t replications = 0;  ///< Replications that produced a finite estimate.
  std::size_t failures = 0;      ///< Degenerate replications, skipped.
};

struct ScenarioResult {
  Scenario scenario;
  std::vector<IndexSummary> indices;
  std::string error;  ///< Non-empty when the scenario could not be evaluated.
};

struct RunOptions {
  std::size_t workers = 0;      ///< 0 selects std::thread::hardware_concurrency().
  std::size_t block_size = 256; ///< Replications per work item; fixed so results do not depend on workers.
};

/// Index kinds with a closed-form null for the model (dispersion and skewness).
std::vector<IndexKind> default_indices(const ModelSpec& model);

/**
 * @brief Runs R replications and aggregates each index.
 *
 * Replication k draws from the stream (scenario seed, k), where the scenario
 * seed mixes the master seed with the fingerprint.
 * @throws DegenerateInputError when every replication is degenerate for some index.
 */
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& opts = {});

/** @brief Cartesian grid of scenarios. Defaults reproduce the published simulation design. */
struct GridConfig {
  enum class Family { Poisson, Binomial };
  Family family = Family::Poisson;
  double mu = 3.0;                 ///< Process mean; for the binomial family pi = mu / n unless pi is set.
  std::optional<double> pi;        ///< Binomial success probability (overrides mu).
  double rho = 0.5;
  std::vector<std::int64_t> n{10, 25};
  std::vector<double> tau{1.0, 0.8, 0.6, 0.4};
  std::vector<double> r{0.0, 0.3, 0.6};
  std::vector<std::size_t> T{100, 250, 500, 1000};
  std::vector<IndexKind> indices;  ///< Empty: defaults of the family.
  std::size_t replications = 10000;
  std::uint64_t seed = 1;
  std::size_t workers = 0;

  /// Scenarios ordered by tau descending, then r, T and n ascending.
  std::vector<Scenario> scenarios() const;
};

/// Runs every scenario; errors are recorded per row and the grid continues.
std::vector<ScenarioResult> run_grid(const GridConfig& config, const RunOptions& opts = {});

/// CSV with one line per (scenario, index); numbers at full precision.
void write_results_csv(std::ostream& out, const std::vector<ScenarioResult>& rows);

/// Paper-style fixed-width table with three decimals.
void write_results_table(std::ostream& out, const std::vector<ScenarioResult>& rows);

/** @brief Request for T-scaled variance and bias curves over tau. */
struct CurveRequest {
  IndexKind kind = IndexKind::PoiDispersion;
  double rho = 0.5;
  std::vector<double> r_values{0.0, 0.3, 0.6};
  double tau_min = 0.25;
  double tau_max = 1.0;
  double tau_step = 0.01;
  std::vector<double> mu_values{3.0};  ///< Process means (binomial: pi = mu / n).
  std::vector<std::int64_t> n_values{10};

  void validate() const;
};

struct CurvePoint {
  double tau = 1.0;
  double r = 0.0;
  double mu = 0.0;
  std::int64_t n = 0;  ///< 0 for Poisson indices.
  double T_variance = 0.0;
  double T_bias = 0.0;
};

/// Points ordered by (mu, n, r) then tau ascending.
std::vector<CurvePoint> emit_curves(const CurveRequest& request);
void write_curves_csv(std::ostream& out, const std::vector<CurvePoint>& points);

/// Reads a grid configuration; unknown keys raise ParseError.
GridConfig load_grid_config(const std::string& path);
GridConfig parse_grid_config(const std::string& json_text);

/** @brief Which fields count as missing values. */
struct NaPolicy {
  std::vector<std::string> tokens{"NA"};
  bool empty_is_missing = true;
};

/**
 * @brief Reads one count per row.
 *
 * "NA" or an empty field marks a missing value. A non-numeric first row is
 * taken as a header. With two or more columns the last one is the value and
 * the others (e.g. an index or date) are ignored.
 * @throws ParseError naming the 1-based line of the offending entry.
 */
CountSeries load_series_csv(const std::string& path, const NaPolicy& na = {});
CountSeries parse_series_csv(std::istream& in, const NaPolicy& na = {});

/// Writes "x" header and one value per row with NA for masked positions.
void write_series_csv(std::ostream& out, const CountSeries& series);

}  // namespace countdiag
