#include "countdiag/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <functional>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <type_traits>

#include "countdiag/diagnostics.hpp"
#include "countdiag/errors.hpp"
#include "countdiag/moments.hpp"

namespace countdiag {

namespace {

/** @brief Streaming mean and sum of squared deviations. */
struct Welford {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  /// Chan et al. pairwise combination.
  void merge(const Welford& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
    count += other.count;
  }
};

struct BlockResult {
  std::vector<Welford> stats;
  std::vector<std::size_t> failures;
};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::int64_t model_n(const ModelSpec& model) {
  if (const auto* b = std::get_if<Bar1>(&model)) return b->n;
  return 0;
}

bool is_binomial(const ModelSpec& model) { return std::holds_alternative<Bar1>(model); }

IndexAsymptotics scenario_asymptotics(const Scenario& s, IndexKind kind) {
  const double T = static_cast<double>(s.T);
  const double tau = s.missing.tau;
  const double r = s.missing.r;
  if (const auto* p = std::get_if<PoiInar1>(&s.model)) {
    if (kind == IndexKind::PoiDispersion) return poi_dispersion_asym_markov(p->mu, p->rho, tau, r, T);
    if (kind == IndexKind::SkewPoi) return skew_asym_poisson_markov(p->mu, p->rho, tau, r, T);
  } else {
    const auto& b = std::get<Bar1>(s.model);
    if (kind == IndexKind::BinDispersion) return bin_dispersion_asym_markov(b.n, b.pi, b.rho, tau, r, T);
    if (kind == IndexKind::SkewBin) return skew_asym_binomial_markov(b.n, b.pi, b.rho, tau, r, T);
  }
  throw std::invalid_argument("index " + to_string(kind) + " has no closed form for this model");
}

}  // namespace

void Scenario::validate() const {
  countdiag::validate(model);
  missing.validate();
  if (T < 1) throw ParameterError("Scenario: T must be at least 1");
  if (replications < 1) throw ParameterError("Scenario: replications must be at least 1");
  for (IndexKind k : indices) {
    const bool bin_kind = k == IndexKind::BinDispersion || k == IndexKind::SkewBin;
    if (bin_kind != is_binomial(model)) {
      throw ParameterError("Scenario: index " + to_string(k) + " does not match the model family");
    }
  }
}

std::string Scenario::fingerprint() const {
  std::ostringstream s;
  if (const auto* p = std::get_if<PoiInar1>(&model)) {
    s << "poisson;mu=" << fmt(p->mu) << ";rho=" << fmt(p->rho);
  } else {
    const auto& b = std::get<Bar1>(model);
    s << "binomial;n=" << b.n << ";pi=" << fmt(b.pi) << ";rho=" << fmt(b.rho);
  }
  s << ";tau=" << fmt(missing.tau) << ";r=" << fmt(missing.r) << ";T=" << T;
  return s.str();
}

std::vector<IndexKind> default_indices(const ModelSpec& model) {
  return indices_for(is_binomial(model) ? NullFamily::BinomialAr1 : NullFamily::PoissonInar1);
}

ScenarioResult run_scenario(const Scenario& input, const RunOptions& opts) {
  Scenario s = input;
  if (s.indices.empty()) s.indices = default_indices(s.model);
  s.validate();

  const std::size_t K = s.indices.size();
  const std::int64_t n = model_n(s.model);
  const std::uint64_t scenario_seed = mix_seed(s.master_seed, fnv1a(s.fingerprint()));
  const std::size_t block = std::max<std::size_t>(1, opts.block_size);
  const std::size_t n_blocks = (s.replications + block - 1) / block;
  std::vector<BlockResult> blocks(n_blocks);

  auto run_block = [&](std::size_t b) {
    BlockResult out;
    out.stats.resize(K);
    out.failures.assign(K, 0);
    const std::size_t first = b * block;
    const std::size_t last = std::min(s.replications, first + block);
    for (std::size_t rep = first; rep < last; ++rep) {
      RandomStream rng(Seed{scenario_seed, rep});
      CountSeries series = simulate_model(s.model, s.T, rng);
      if (s.missing.tau < 1.0) series = apply_mask(series, simulate_markov_mask(s.missing, s.T, rng));
      if (series.observed_count() == 0) {
        for (auto& f : out.failures) ++f;
        continue;
      }
      const MomentSummary m = sample_factorial_moments(series, 3);
      for (std::size_t k = 0; k < K; ++k) {
        try {
          const double v = index_from_moments(m, s.indices[k], n);
          if (std::isfinite(v)) {
            out.stats[k].add(v);
          } else {
            ++out.failures[k];
          }
        } catch (const DegenerateInputError&) {
          ++out.failures[k];
        }
      }
    }
    blocks[b] = std::move(out);
  };

  std::size_t workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  workers = std::min(workers, n_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
          try {
            run_block(b);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  ScenarioResult result;
  result.scenario = s;
  for (std::size_t k = 0; k < K; ++k) {
    Welford total;
    std::size_t failures = 0;
    for (const auto& b : blocks) {
      total.merge(b.stats[k]);
      failures += b.failures[k];
    }
    if (total.count == 0) {
      throw DegenerateInputError("run_scenario: every replication is degenerate for " + to_string(s.indices[k]));
    }
    const IndexAsymptotics asym = scenario_asymptotics(s, s.indices[k]);
    IndexSummary summary;
    summary.kind = s.indices[k];
    summary.sim_mean = total.mean;
    if (total.count >= 2) summary.sim_sd = std::sqrt(total.m2 / static_cast<double>(total.count - 1));
    summary.asym_mean = asym.mean();
    summary.asym_sd = asym.sd();
    summary.replications = total.count;
    summary.failures = failures;
    result.indices.push_back(summary);
  }
  return result;
}

std::vector<Scenario> GridConfig::scenarios() const {
  std::vector<double> taus = tau;
  std::vector<double> rs = r;
  std::vector<std::size_t> Ts = T;
  std::vector<std::int64_t> ns = n;
  std::sort(taus.begin(), taus.end(), std::greater<>());
  std::sort(rs.begin(), rs.end());
  std::sort(Ts.begin(), Ts.end());
  std::sort(ns.begin(), ns.end());
  if (family == Family::Poisson) ns = {0};

  std::vector<Scenario> out;
  for (double t : taus) {
    for (double rr : rs) {
      for (std::size_t len : Ts) {
        for (std::int64_t nn : ns) {
          Scenario s;
          if (family == Family::Poisson) {
            s.model = PoiInar1{mu, rho};
          } else {
            const double p = pi ? *pi : mu / static_cast<double>(nn);
            s.model = Bar1{nn, p, rho};
          }
          s.missing = MissingSpec{t, rr};
          s.T = len;
          s.indices = indices;
          s.replications = replications;
          s.master_seed = seed;
          out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

std::vector<ScenarioResult> run_grid(const GridConfig& config, const RunOptions& opts) {
  RunOptions o = opts;
  if (o.workers == 0) o.workers = config.workers;
  std::vector<ScenarioResult> rows;
  for (const Scenario& s : config.scenarios()) {
    try {
      rows.push_back(run_scenario(s, o));
    } catch (const std::exception& e) {
      ScenarioResult failed;
      failed.scenario = s;
      failed.error = e.what();
      rows.push_back(std::move(failed));
    }
  }
  return rows;
}

namespace {

void scenario_columns(std::ostream& out, const Scenario& s) {
  if (const auto* p = std::get_if<PoiInar1>(&s.model)) {
    out << "poisson,," << fmt(p->mu) << ',' << fmt(p->rho);
  } else {
    const auto& b = std::get<Bar1>(s.model);
    out << "binomial," << b.n << ',' << fmt(b.mean()) << ',' << fmt(b.rho);
  }
  out << ',' << fmt(s.missing.tau) << ',' << fmt(s.missing.r) << ',' << s.T;
}

std::string csv_quote(const std::string& text) {
  std::string q = "\"";
  for (char c : text) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ScenarioResult>& rows) {
  out << "model,n,mu,rho,tau,r,T,index,sim_mean,sim_sd,asym_mean,asym_sd,replications,failures,error\n";
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      scenario_columns(out, row.scenario);
      out << ",,,,,,,," << csv_quote(row.error) << '\n';
      continue;
    }
    for (const auto& idx : row.indices) {
      scenario_columns(out, row.scenario);
      out << ',' << to_string(idx.kind) << ',' << fmt(idx.sim_mean) << ','
          << (idx.sim_sd ? fmt(*idx.sim_sd) : std::string()) << ',' << fmt(idx.asym_mean) << ','
          << fmt(idx.asym_sd) << ',' << idx.replications << ',' << idx.failures << ",\n";
    }
  }
}

void write_results_table(std::ostream& out, const std::vector<ScenarioResult>& rows) {
  out << std::fixed;
  for (const auto& row : rows) {
    const Scenario& s = row.scenario;
    out << "tau=" << std::setprecision(2) << s.missing.tau << " r=" << s.missing.r << " T=" << std::setw(5) << s.T;
    if (const auto* b = std::get_if<Bar1>(&s.model)) out << " n=" << std::setw(3) << b->n;
    if (!row.error.empty()) {
      out << "  error: " << row.error << '\n';
      continue;
    }
    out << std::setprecision(3);
    for (const auto& idx : row.indices) {
      out << "  " << to_string(idx.kind) << " mean " << idx.sim_mean << '/' << idx.asym_mean << " sd ";
      if (idx.sim_sd) {
        out << *idx.sim_sd;
      } else {
        out << "  n/a";
      }
      out << '/' << idx.asym_sd;
      if (idx.failures > 0) out << " (" << idx.failures << " skipped)";
    }
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void CurveRequest::validate() const {
  if (!(tau_min >= 0.25 - 1e-12 && tau_max <= 1.0 + 1e-12 && tau_min <= tau_max)) {
    throw ParameterError("CurveRequest: tau range must lie within [0.25, 1]");
  }
  if (!(tau_step > 0.0)) throw ParameterError("CurveRequest: tau step must be positive");
  if (r_values.empty()) throw ParameterError("CurveRequest: at least one r value is required");
  const bool bin = kind == IndexKind::BinDispersion || kind == IndexKind::SkewBin;
  if (bin && n_values.empty()) throw ParameterError("CurveRequest: binomial curves need n values");
  if (mu_values.empty()) throw ParameterError("CurveRequest: at least one mean is required");
}

std::vector<CurvePoint> emit_curves(const CurveRequest& req) {
  req.validate();
  const bool bin = req.kind == IndexKind::BinDispersion || req.kind == IndexKind::SkewBin;
  const std::vector<std::int64_t> ns = bin ? req.n_values : std::vector<std::int64_t>{0};
  const auto steps = static_cast<std::size_t>(std::floor((req.tau_max - req.tau_min) / req.tau_step + 1e-9));
  std::vector<CurvePoint> out;
  for (double mu : req.mu_values) {
    for (std::int64_t n : ns) {
      for (double r : req.r_values) {
        for (std::size_t i = 0; i <= steps; ++i) {
          const double tau = req.tau_min + static_cast<double>(i) * req.tau_step;
          IndexAsymptotics a;
          switch (req.kind) {
            case IndexKind::PoiDispersion: a = poi_dispersion_asym_markov(mu, req.rho, tau, r, 1.0); break;
            case IndexKind::SkewPoi: a = skew_asym_poisson_markov(mu, req.rho, tau, r, 1.0); break;
            case IndexKind::BinDispersion:
              a = bin_dispersion_asym_markov(n, mu / static_cast<double>(n), req.rho, tau, r, 1.0);
              break;
            case IndexKind::SkewBin:
              a = skew_asym_binomial_markov(n, mu / static_cast<double>(n), req.rho, tau, r, 1.0);
              break;
          }
          out.push_back(CurvePoint{tau, r, mu, n, a.variance, a.bias});
        }
      }
    }
  }
  return out;
}

void write_curves_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "tau,r,mu,n,T_variance,T_bias\n";
  for (const auto& p : points) {
    out << fmt(p.tau) << ',' << fmt(p.r) << ',' << fmt(p.mu) << ',';
    if (p.n > 0) out << p.n;
    out << ',' << fmt(p.T_variance) << ',' << fmt(p.T_bias) << '\n';
  }
}

}  // namespace countdiag
