#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "countdiag/core_model.hpp"
#include "countdiag/diagnostics.hpp"
#include "countdiag/errors.hpp"
#include "countdiag/harness.hpp"
#include "report_output.hpp"

namespace countdiag::cli {

namespace {

/// Opens @p path for writing, or returns stdout for "-".
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw std::runtime_error("write to '" + path + "' failed");
  }

 private:
  std::ofstream file_;
};

AcfNormalization acf_normalization_from_string(const std::string& name) {
  if (name == "series-length") return AcfNormalization::SeriesLength;
  if (name == "pair-count") return AcfNormalization::PairCount;
  throw std::invalid_argument("unknown ACF normalization '" + name + "' (expected series-length or pair-count)");
}

const std::vector<std::string> kIndexNames{"poi-dispersion", "bin-dispersion", "skew-poi", "skew-bin"};

struct SimulateArgs {
  std::string model = "poisson";
  double mu = 3.0;
  double rho = 0.5;
  std::int64_t n = 0;
  std::optional<double> pi;
  double tau = 1.0;
  double r = 0.0;
  std::size_t length = 0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string out = "-";
};

void run_simulate(const SimulateArgs& a) {
  ModelSpec model;
  if (a.model == "poisson") {
    if (a.n != 0 || a.pi) throw ParameterError("--n and --pi apply to the binomial model only");
    model = PoiInar1{a.mu, a.rho};
  } else {
    if (a.n < 2) throw ParameterError("the binomial model needs --n >= 2");
    model = Bar1{a.n, a.pi.value_or(a.mu / static_cast<double>(a.n)), a.rho};
  }
  validate(model);
  const MissingSpec missing{a.tau, a.r};
  missing.validate();
  RandomStream rng(Seed{a.seed, a.stream});
  const CountSeries x = simulate_model(model, a.length, rng);
  const CountSeries observed = apply_mask(x, simulate_markov_mask(missing, a.length, rng));
  OutputTarget out(a.out);
  write_series_csv(out.stream(), observed);
  out.finish(a.out);
}

struct DiagnoseArgs {
  std::string input;
  std::string null = "poisson";
  std::int64_t n = 0;
  double alpha = 0.05;
  bool ignore_missing = false;
  std::string sided = "two-sided";
  std::optional<double> mask_r;
  std::string acf_normalization = "series-length";
  std::string format = "both";
  std::vector<std::string> na_tokens{"NA"};
};

NullSpec null_spec_from(const std::string& family, std::int64_t n, double alpha, const std::string& sided) {
  NullSpec null;
  null.family = null_family_from_string(family);
  null.n = n;
  null.alpha = alpha;
  null.sidedness = sidedness_from_string(sided);
  if (null.family == NullFamily::PoissonInar1 && n != 0) {
    throw ParameterError("--n applies to the binomial null only");
  }
  return null;
}

void run_diagnose(const DiagnoseArgs& a) {
  NullSpec null = null_spec_from(a.null, a.n, a.alpha, a.sided);
  null.ignore_missing = a.ignore_missing;
  null.acf_normalization = acf_normalization_from_string(a.acf_normalization);
  null.r_override = a.mask_r;
  null.validate();
  const OutputFormat format = output_format_from_string(a.format);

  NaPolicy na;
  na.tokens = a.na_tokens;
  const CountSeries series = load_series_csv(a.input, na);

  std::vector<TestReport> reports;
  for (IndexKind kind : indices_for(null.family)) reports.push_back(test_index(series, null, kind));

  nlohmann::ordered_json doc;
  doc["input"] = a.input;
  doc["null"] = {{"family", to_string(null.family)},
                 {"n", null.n},
                 {"alpha", null.alpha},
                 {"ignore_missing", null.ignore_missing},
                 {"acf_normalization", a.acf_normalization}};
  doc["series"] = {{"length", series.size()}, {"observed", series.observed_count()}};
  doc["fitted"] = fitted_to_json(reports.front().fitted);
  doc["tests"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) doc["tests"].push_back(report_to_json(r));
  emit(doc, reports.front().fitted, reports, format, std::cout, std::cerr);
}

struct CriticalArgs {
  std::string null = "poisson";
  std::int64_t n = 0;
  double alpha = 0.05;
  std::string sided = "two-sided";
  std::size_t length = 0;
  double mu_hat = 0.0;
  double rho_hat = 0.0;
  double tau_hat = 1.0;
  double r_hat = 0.0;
  double statistic = 0.0;
  std::string index;
  std::string format = "text";
};

void run_critical(const CriticalArgs& a) {
  const NullSpec null = null_spec_from(a.null, a.n, a.alpha, a.sided);
  const OutputFormat format = output_format_from_string(a.format);
  FittedParams f;
  f.mu_hat = a.mu_hat;
  f.rho_hat = a.rho_hat;
  f.tau_hat = a.tau_hat;
  f.r_hat = a.r_hat;
  f.T = a.length;
  f.n = a.n;
  const TestReport rep = critical_report(index_kind_from_string(a.index), null, f, a.statistic);
  nlohmann::ordered_json doc;
  doc["fitted"] = fitted_to_json(rep.fitted);
  doc["tests"] = nlohmann::ordered_json::array({report_to_json(rep)});
  emit(doc, rep.fitted, {rep}, format, std::cout, std::cerr);
}

struct McArgs {
  std::string config;
  std::string out;
  std::optional<std::size_t> workers;
  bool table = false;
};

void run_mc(const McArgs& a) {
  const GridConfig cfg = load_grid_config(a.config);
  RunOptions opts;
  opts.workers = a.workers.value_or(cfg.workers);
  const auto rows = run_grid(cfg, opts);
  OutputTarget out(a.out);
  write_results_csv(out.stream(), rows);
  out.finish(a.out);
  if (a.table) write_results_table(std::cout, rows);
  std::size_t errors = 0;
  for (const auto& row : rows) errors += !row.error.empty();
  if (errors > 0) std::cerr << errors << " scenario(s) failed; see the error column\n";
}

struct CurvesArgs {
  std::string index;
  CurveRequest request;
  std::string out = "-";
};

void run_curves(CurvesArgs a) {
  a.request.kind = index_kind_from_string(a.index);
  const auto points = emit_curves(a.request);
  OutputTarget out(a.out);
  write_curves_csv(out.stream(), points);
  out.finish(a.out);
}

}  // namespace

void register_simulate(CLI::App& app) {
  auto args = std::make_shared<SimulateArgs>();
  CLI::App* sub = app.add_subcommand("simulate", "Simulate a count series with a Markov observation mask");
  sub->add_option("--model", args->model, "poisson or binomial")
      ->check(CLI::IsMember({"poisson", "binomial"}))
      ->capture_default_str();
  sub->add_option("--mu", args->mu, "process mean (binomial: pi = mu / n unless --pi is given)")
      ->capture_default_str();
  sub->add_option("--rho", args->rho, "lag-one autocorrelation")->capture_default_str();
  sub->add_option("--n", args->n, "binomial upper bound");
  sub->add_option("--pi", args->pi, "binomial success probability");
  sub->add_option("--tau", args->tau, "observation probability")->capture_default_str();
  sub->add_option("--r", args->r, "lag-one autocorrelation of the mask")->capture_default_str();
  sub->add_option("--length", args->length, "series length T")->required()->check(CLI::PositiveNumber);
  sub->add_option("--seed", args->seed, "master seed")->capture_default_str();
  sub->add_option("--stream", args->stream, "stream index under the master seed")->capture_default_str();
  sub->add_option("--out", args->out, "output CSV path, - for stdout")->capture_default_str();
  sub->callback([args] { run_simulate(*args); });
}

void register_diagnose(CLI::App& app) {
  auto args = std::make_shared<DiagnoseArgs>();
  CLI::App* sub = app.add_subcommand("diagnose", "Test a count series against a Poisson or binomial AR(1) null");
  sub->add_option("--input", args->input, "CSV file; the last column holds the counts")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--null", args->null, "poisson or binomial")
      ->required()
      ->check(CLI::IsMember({"poisson", "binomial"}));
  sub->add_option("--n", args->n, "upper bound of the binomial null");
  sub->add_option("--alpha", args->alpha, "test level")->capture_default_str();
  sub->add_flag("--ignore-missing", args->ignore_missing, "drop masked points and treat the rest as complete");
  sub->add_option("--sided", args->sided, "two-sided, upper or lower")
      ->check(CLI::IsMember({"two-sided", "upper", "lower"}))
      ->capture_default_str();
  sub->add_option("--mask-r", args->mask_r, "use this mask dependence instead of the estimate");
  sub->add_option("--acf-normalization", args->acf_normalization, "series-length or pair-count")
      ->check(CLI::IsMember({"series-length", "pair-count"}))
      ->capture_default_str();
  sub->add_option("--format", args->format, "both (JSON on stdout, text on stderr), json or text")
      ->check(CLI::IsMember({"both", "json", "text"}))
      ->capture_default_str();
  sub->add_option("--na", args->na_tokens, "tokens that mark a missing value")->capture_default_str();
  sub->callback([args] { run_diagnose(*args); });
}

void register_critical(CLI::App& app) {
  auto args = std::make_shared<CriticalArgs>();
  CLI::App* sub = app.add_subcommand("critical", "Critical values from published or externally fitted estimates");
  sub->add_option("--null", args->null, "poisson or binomial")
      ->required()
      ->check(CLI::IsMember({"poisson", "binomial"}));
  sub->add_option("--n", args->n, "upper bound of the binomial null");
  sub->add_option("--alpha", args->alpha, "test level")->capture_default_str();
  sub->add_option("--sided", args->sided, "two-sided, upper or lower")
      ->check(CLI::IsMember({"two-sided", "upper", "lower"}))
      ->capture_default_str();
  sub->add_option("--length", args->length, "series length T")->required()->check(CLI::PositiveNumber);
  sub->add_option("--mu-hat", args->mu_hat, "estimated mean")->required();
  sub->add_option("--rho-hat", args->rho_hat, "estimated lag-one autocorrelation")->required();
  sub->add_option("--tau-hat", args->tau_hat, "estimated observation probability")->capture_default_str();
  sub->add_option("--r-hat", args->r_hat, "estimated mask dependence")->capture_default_str();
  sub->add_option("--statistic", args->statistic, "observed index value")->required();
  sub->add_option("--index", args->index, "index kind")->required()->check(CLI::IsMember(kIndexNames));
  sub->add_option("--format", args->format, "both, json or text")
      ->check(CLI::IsMember({"both", "json", "text"}))
      ->capture_default_str();
  sub->callback([args] { run_critical(*args); });
}

void register_mc(CLI::App& app) {
  auto args = std::make_shared<McArgs>();
  CLI::App* sub = app.add_subcommand("mc", "Monte Carlo grid of simulated versus asymptotic index moments");
  sub->add_option("--config", args->config, "JSON grid configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", args->out, "output CSV path, - for stdout")->required();
  sub->add_option("--workers", args->workers, "worker threads (0 = hardware concurrency)");
  sub->add_flag("--table", args->table, "also print a fixed-width table to stdout");
  sub->callback([args] { run_mc(*args); });
}

void register_curves(CLI::App& app) {
  auto args = std::make_shared<CurvesArgs>();
  CLI::App* sub = app.add_subcommand("curves", "T-scaled asymptotic variance and bias along a tau grid");
  sub->add_option("--index", args->index, "index kind")->required()->check(CLI::IsMember(kIndexNames));
  sub->add_option("--rho", args->request.rho, "lag-one autocorrelation")->capture_default_str();
  sub->add_option("--r", args->request.r_values, "mask dependence values")->capture_default_str();
  sub->add_option("--mu", args->request.mu_values, "process means")->capture_default_str();
  sub->add_option("--n", args->request.n_values, "binomial upper bounds")->capture_default_str();
  sub->add_option("--tau-min", args->request.tau_min, "smallest tau")->capture_default_str();
  sub->add_option("--tau-max", args->request.tau_max, "largest tau")->capture_default_str();
  sub->add_option("--tau-step", args->request.tau_step, "tau increment")->capture_default_str();
  sub->add_option("--out", args->out, "output CSV path, - for stdout")->capture_default_str();
  sub->callback([args] { run_curves(*args); });
}

}  // namespace countdiag::cli
