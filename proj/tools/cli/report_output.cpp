#include "report_output.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace countdiag::cli {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "both") return OutputFormat::Both;
  if (name == "json") return OutputFormat::Json;
  if (name == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown format '" + name + "' (expected both, json or text)");
}

nlohmann::ordered_json fitted_to_json(const FittedParams& f) {
  nlohmann::ordered_json j;
  j["mu_hat"] = f.mu_hat;
  j["rho_hat"] = f.rho_hat;
  j["tau_hat"] = f.tau_hat;
  j["r_hat"] = f.r_hat;
  j["T"] = f.T;
  if (f.n > 0) j["n"] = f.n;
  j["warnings"] = f.warnings;
  return j;
}

nlohmann::ordered_json report_to_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["index"] = to_string(r.kind);
  j["statistic"] = r.statistic;
  j["null_value"] = r.null_value;
  j["bias"] = r.bias;
  j["sd"] = r.sd;
  j["lower_critical"] = r.lower_critical;
  j["upper_critical"] = r.upper_critical;
  j["alpha"] = r.alpha;
  j["sidedness"] = to_string(r.sidedness);
  j["decision"] = to_string(r.decision);
  return j;
}

void write_fitted_text(std::ostream& out, const FittedParams& f) {
  out << "fitted null parameters\n";
  out << "  mu-hat  " << fixed6(f.mu_hat) << '\n';
  out << "  rho-hat " << fixed6(f.rho_hat) << '\n';
  out << "  tau-hat " << fixed6(f.tau_hat) << '\n';
  out << "  r-hat   " << fixed6(f.r_hat) << '\n';
  out << "  T       " << f.T << '\n';
  if (f.n > 0) out << "  n       " << f.n << '\n';
  for (const auto& w : f.warnings) out << "  warning: " << w << '\n';
}

void write_report_text(std::ostream& out, const TestReport& r) {
  out << to_string(r.kind) << " (alpha " << r.alpha << ", " << to_string(r.sidedness) << ")\n";
  out << "  statistic       " << fixed6(r.statistic) << '\n';
  out << "  null value      " << fixed6(r.null_value) << '\n';
  out << "  bias            " << fixed6(r.bias) << '\n';
  out << "  sd              " << fixed6(r.sd) << '\n';
  out << "  lower critical  " << fixed6(r.lower_critical) << '\n';
  out << "  upper critical  " << fixed6(r.upper_critical) << '\n';
  out << "  decision        " << to_string(r.decision) << '\n';
}

void emit(const nlohmann::ordered_json& doc, const FittedParams& fitted, const std::vector<TestReport>& reports,
          OutputFormat format, std::ostream& json_out, std::ostream& text_out) {
  if (format != OutputFormat::Json) {
    std::ostream& out = format == OutputFormat::Text ? json_out : text_out;
    write_fitted_text(out, fitted);
    for (const auto& r : reports) write_report_text(out, r);
  }
  if (format != OutputFormat::Text) json_out << doc.dump(2) << '\n';
}

}  // namespace countdiag::cli
