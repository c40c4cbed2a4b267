#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "partition_stats/density.hpp"
#include "partition_stats/ecdf.hpp"
#include "partition_stats/montecarlo.hpp"
#include "partition_stats/numeric.hpp"

namespace partition_stats::serialize {

using json = nlohmann::ordered_json;

// CSV output is organized as named sections: a `# name` comment line, a
// header row, data rows, and a blank line between sections. Floats use the
// shortest representation that round-trips, matching the JSON encoder in
// value if not always in spelling.

class CsvWriter {
 public:
  void section(const std::string& name) {
    if (!out_.empty()) out_ += '\n';
    out_ += "# " + name + "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ',';
      append_quoted(cells[i]);
    }
    out_ += '\n';
  }

  template <typename T>
  static std::string cell(T x) {
    if constexpr (std::is_same_v<T, bool>) {
      return x ? "true" : "false";
    } else if constexpr (std::is_floating_point_v<T>) {
      return format_double(x);
    } else {
      return std::to_string(x);
    }
  }

  const std::string& str() const { return out_; }

 private:
  void append_quoted(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) {
      out_ += cell;
      return;
    }
    out_ += '"';
    for (char c : cell) {
      if (c == '"') out_ += '"';
      out_ += c;
    }
    out_ += '"';
  }

  std::string out_;
};

inline json to_json(const VerificationReport& r) {
  json segments = json::array();
  for (std::size_t j = 0; j < r.segments.size(); ++j) {
    const auto& s = r.segments[j];
    segments.push_back({{"index", j},
                        {"mean", s.mean},
                        {"variance", s.variance},
                        {"se", s.se},
                        {"z", s.z}});
  }
  return {{"n", r.n},
          {"reps", r.reps},
          {"seed", r.seed},
          {"target", r.target},
          {"z_max", r.z_max},
          {"segments", segments},
          {"mean_sum", r.mean_sum},
          {"pass", r.pass}};
}

inline std::string to_csv(const VerificationReport& r) {
  CsvWriter w;
  w.section("params");
  w.row({"n", "reps", "seed", "target", "z_max", "mean_sum", "pass"});
  w.row({CsvWriter::cell(r.n), CsvWriter::cell(r.reps), CsvWriter::cell(r.seed),
         CsvWriter::cell(r.target), CsvWriter::cell(r.z_max),
         CsvWriter::cell(r.mean_sum), CsvWriter::cell(r.pass)});
  w.section("segments");
  w.row({"index", "mean", "variance", "se", "z"});
  for (std::size_t j = 0; j < r.segments.size(); ++j) {
    const auto& s = r.segments[j];
    w.row({CsvWriter::cell(j), CsvWriter::cell(s.mean), CsvWriter::cell(s.variance),
           CsvWriter::cell(s.se), CsvWriter::cell(s.z)});
  }
  return w.str();
}

inline json to_json(const SpacingsSummary& s) {
  json spacings = json::array();
  for (std::size_t j = 0; j < s.spacings.size(); ++j) {
    const auto& sp = s.spacings[j];
    spacings.push_back({{"index", j},
                        {"mean", sp.mean},
                        {"variance", sp.variance},
                        {"q025", sp.q025},
                        {"q50", sp.q50},
                        {"q975", sp.q975}});
  }
  return {{"n", s.n}, {"reps", s.reps}, {"seed", s.seed}, {"spacings", spacings}};
}

inline std::string to_csv(const SpacingsSummary& s) {
  CsvWriter w;
  w.section("spacings_params");
  w.row({"n", "reps", "seed"});
  w.row({CsvWriter::cell(s.n), CsvWriter::cell(s.reps), CsvWriter::cell(s.seed)});
  w.section("spacings");
  w.row({"index", "mean", "variance", "q025", "q50", "q975"});
  for (std::size_t j = 0; j < s.spacings.size(); ++j) {
    const auto& sp = s.spacings[j];
    w.row({CsvWriter::cell(j), CsvWriter::cell(sp.mean), CsvWriter::cell(sp.variance),
           CsvWriter::cell(sp.q025), CsvWriter::cell(sp.q50),
           CsvWriter::cell(sp.q975)});
  }
  return w.str();
}

inline json to_json(const McEstimate& e) {
  return {{"value", e.value},
          {"se", e.se},
          {"target", e.target},
          {"z", e.z},
          {"reps", e.reps}};
}

inline json to_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"rank", row.rank},
                    {"value", row.value},
                    {"ecdf", row.ecdf},
                    {"partition_cdf", row.partition_cdf}});
  }
  return {{"order_statistics", rows},
          {"sup_difference", r.sup_difference},
          {"tail_mass_above_max",
           {{"ecdf", r.ecdf_tail_mass}, {"partition", r.partition_tail_mass}}}};
}

inline std::string to_csv(const ComparisonReport& r) {
  CsvWriter w;
  w.section("order_statistics");
  w.row({"rank", "value", "ecdf", "partition_cdf"});
  for (const auto& row : r.rows) {
    w.row({CsvWriter::cell(row.rank), CsvWriter::cell(row.value),
           CsvWriter::cell(row.ecdf), CsvWriter::cell(row.partition_cdf)});
  }
  w.section("summary");
  w.row({"sup_difference", "ecdf_tail_mass", "partition_tail_mass"});
  w.row({CsvWriter::cell(r.sup_difference), CsvWriter::cell(r.ecdf_tail_mass),
         CsvWriter::cell(r.partition_tail_mass)});
  return w.str();
}

inline json to_json(const PiecewiseUniformDensity::Piece& p) {
  const char* kind =
      p.kind == PiecewiseUniformDensity::Piece::Kind::uniform ? "uniform" : "exponential";
  json out = {{"lower", nullptr},
              {"upper", nullptr},
              {"mass", p.mass},
              {"height", p.height},
              {"kind", kind}};
  if (std::isfinite(p.lower)) out["lower"] = p.lower;
  if (std::isfinite(p.upper)) out["upper"] = p.upper;
  return out;
}

}  // namespace partition_stats::serialize
