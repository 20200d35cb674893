#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "countdiag/errors.hpp"
#include "countdiag/harness.hpp"

namespace countdiag {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

std::string last_field(const std::string& line) {
  const auto comma = line.rfind(',');
  return trim(comma == std::string::npos ? line : line.substr(comma + 1));
}

bool parse_count(const std::string& field, std::int64_t& value) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

bool looks_numeric(const std::string& field) {
  double d = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, d);
  return ec == std::errc() && ptr == end;
}

}  // namespace

CountSeries parse_series_csv(std::istream& in, const NaPolicy& na) {
  CountSeries series;
  std::string line;
  std::size_t row = 0;
  bool first_content = true;
  std::size_t pending_blank = 0;  // blank lines count as missing only when followed by data
  auto flush_blank = [&] {
    series.values.insert(series.values.end(), pending_blank, kMaskedSentinel);
    series.mask.insert(series.mask.end(), pending_blank, 0);
    pending_blank = 0;
  };
  while (std::getline(in, line)) {
    ++row;
    if (row == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (trim(line).empty() && line.find(',') == std::string::npos) {
      if (!na.empty_is_missing) throw ParseError("empty line", row);
      if (!first_content) ++pending_blank;
      continue;
    }
    flush_blank();
    const std::string field = last_field(line);
    const bool is_na = (field.empty() && na.empty_is_missing) ||
                       std::find(na.tokens.begin(), na.tokens.end(), field) != na.tokens.end();
    if (is_na) {
      series.values.push_back(kMaskedSentinel);
      series.mask.push_back(0);
      first_content = false;
      continue;
    }
    std::int64_t value = 0;
    if (parse_count(field, value)) {
      if (value < 0) throw ParseError("negative count '" + field + "'", row);
      series.values.push_back(value);
      series.mask.push_back(1);
      first_content = false;
      continue;
    }
    if (first_content && !looks_numeric(field)) {
      first_content = false;  // header row
      continue;
    }
    throw ParseError("expected a non-negative integer count, found '" + field + "'", row);
  }
  if (series.values.empty()) throw ParseError("no observations found");
  return series;
}

CountSeries load_series_csv(const std::string& path, const NaPolicy& na) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_series_csv(in, na);
}

void write_series_csv(std::ostream& out, const CountSeries& series) {
  out << "x\n";
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (series.mask[t] == 1) {
      out << series.values[t] << '\n';
    } else {
      out << "NA\n";
    }
  }
}

}  // namespace countdiag
