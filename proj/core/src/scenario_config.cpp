#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "countdiag/errors.hpp"
#include "countdiag/harness.hpp"

namespace countdiag {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.count(it.key()) == 0) throw ParseError("unknown key '" + it.key() + "' in " + where);
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError("'" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t unsigned_integer(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

template <typename T, typename Convert>
std::vector<T> scalar_or_list(const json& v, const std::string& key, Convert convert) {
  std::vector<T> out;
  if (v.is_array()) {
    if (v.empty()) throw ParseError("'" + key + "' must not be empty");
    for (const auto& e : v) out.push_back(convert(e, key));
  } else {
    out.push_back(convert(v, key));
  }
  return out;
}

}  // namespace

GridConfig parse_grid_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(doc, {"model", "missing", "T", "indices", "replications", "seed", "workers"}, "config");

  GridConfig cfg;
  if (doc.contains("model")) {
    const json& m = doc["model"];
    reject_unknown(m, {"family", "mu", "pi", "rho", "n"}, "model");
    if (m.contains("family")) {
      if (!m["family"].is_string()) throw ParseError("'family' must be a string");
      const std::string f = m["family"].get<std::string>();
      if (f == "poisson") {
        cfg.family = GridConfig::Family::Poisson;
      } else if (f == "binomial") {
        cfg.family = GridConfig::Family::Binomial;
      } else {
        throw ParseError("'family' must be \"poisson\" or \"binomial\"");
      }
    }
    if (m.contains("mu")) cfg.mu = number(m["mu"], "mu");
    if (m.contains("pi")) cfg.pi = number(m["pi"], "pi");
    if (m.contains("rho")) cfg.rho = number(m["rho"], "rho");
    if (m.contains("n")) {
      cfg.n = scalar_or_list<std::int64_t>(m["n"], "n", [](const json& v, const std::string& k) {
        return static_cast<std::int64_t>(unsigned_integer(v, k));
      });
    }
    if (cfg.family == GridConfig::Family::Poisson && (m.contains("n") || m.contains("pi"))) {
      throw ParseError("'n' and 'pi' apply to the binomial family only");
    }
  }
  if (doc.contains("missing")) {
    const json& m = doc["missing"];
    reject_unknown(m, {"tau", "r"}, "missing");
    if (m.contains("tau")) cfg.tau = scalar_or_list<double>(m["tau"], "tau", number);
    if (m.contains("r")) cfg.r = scalar_or_list<double>(m["r"], "r", number);
  }
  if (doc.contains("T")) {
    cfg.T = scalar_or_list<std::size_t>(doc["T"], "T", [](const json& v, const std::string& k) {
      return static_cast<std::size_t>(unsigned_integer(v, k));
    });
  }
  if (doc.contains("indices")) {
    cfg.indices = scalar_or_list<IndexKind>(doc["indices"], "indices", [](const json& v, const std::string& k) {
      if (!v.is_string()) throw ParseError("'" + k + "' entries must be strings");
      try {
        return index_kind_from_string(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    });
  }
  if (doc.contains("replications")) cfg.replications = unsigned_integer(doc["replications"], "replications");
  if (doc.contains("seed")) cfg.seed = unsigned_integer(doc["seed"], "seed");
  if (doc.contains("workers")) cfg.workers = unsigned_integer(doc["workers"], "workers");

  // Surface parameter errors now rather than once per grid row.
  for (const Scenario& s : cfg.scenarios()) {
    try {
      Scenario check = s;
      if (check.indices.empty()) check.indices = default_indices(check.model);
      check.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("invalid scenario: ") + e.what());
    }
  }
  return cfg;
}

GridConfig load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grid_config(buf.str());
}

}  // namespace countdiag
