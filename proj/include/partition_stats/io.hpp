#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "partition_stats/errors.hpp"

namespace partition_stats::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_cell(std::string_view cell, std::size_t line_no) {
  const auto text = trim(cell);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(errc::parse_error,
                "line " + std::to_string(line_no) + ": cannot parse '" +
                    std::string(text) + "' as a number",
                static_cast<long>(line_no));
  }
  return value;
}

}  // namespace detail

/// Read one value per line. Blank lines and `#` comments are skipped.
/// With column >= 0 each line is split on the delimiter and the value is
/// taken from that zero-based column. Errors cite the 1-based line number.
inline std::vector<double> read_values(std::istream& in, int column = -1,
                                       char delimiter = ',') {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (column < 0) {
      out.push_back(detail::parse_cell(view, line_no));
      continue;
    }
    std::size_t start = 0;
    int field = 0;
    for (;;) {
      const auto end = view.find(delimiter, start);
      if (field == column) {
        const auto cell = end == std::string_view::npos
                              ? view.substr(start)
                              : view.substr(start, end - start);
        out.push_back(detail::parse_cell(cell, line_no));
        break;
      }
      if (end == std::string_view::npos) {
        throw Error(errc::parse_error,
                    "line " + std::to_string(line_no) + ": no column " +
                        std::to_string(column),
                    static_cast<long>(line_no));
      }
      start = end + 1;
      ++field;
    }
  }
  return out;
}

/// Parse a comma-separated list of numbers, e.g. inline CLI data.
inline std::vector<double> parse_inline_values(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  std::size_t item = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto cell = end == std::string_view::npos ? text.substr(start)
                                                    : text.substr(start, end - start);
    ++item;
    out.push_back(detail::parse_cell(cell, item));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace partition_stats::io
