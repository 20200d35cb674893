#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "countdiag/diagnostics.hpp"

namespace countdiag::cli {

/// Output selection shared by the reporting subcommands.
enum class OutputFormat { Both, Json, Text };

OutputFormat output_format_from_string(const std::string& name);

nlohmann::ordered_json fitted_to_json(const FittedParams& fitted);
nlohmann::ordered_json report_to_json(const TestReport& report);

/// Human-readable block for one test report.
void write_report_text(std::ostream& out, const TestReport& report);
void write_fitted_text(std::ostream& out, const FittedParams& fitted);

/**
 * @brief Emits a document in the requested format.
 *
 * With OutputFormat::Both the JSON goes to @p json_out and the text to @p text_out,
 * so that stdout stays machine-readable.
 */
void emit(const nlohmann::ordered_json& doc, const FittedParams& fitted, const std::vector<TestReport>& reports,
          OutputFormat format, std::ostream& json_out, std::ostream& text_out);

}  // namespace countdiag::cli
