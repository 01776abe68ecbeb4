#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrps/core.hpp"
#include "pcrps/grid.hpp"
#include "pcrps/inference.hpp"
#include "pcrps/metrics.hpp"

namespace pcrps::io {

// Flat grid file:
//   u64 little-endian N | N bytes UTF-8 JSON header | payload
// The header object holds dims [n_time, n_lat, n_lon], times, lats, lons,
// variable and units. The payload is n_time * n_lat * n_lon IEEE-754
// binary64 little-endian values, time outermost and longitude innermost,
// NaN for missing.
std::string encode_grid(const GridField& field);
GridField decode_grid(std::string_view bytes);
void write_grid(const std::filesystem::path& path, const GridField& field);
GridField read_grid(const std::filesystem::path& path);

/// Rows of a `time,x,y` CSV. Empty or NaN fields decode to NaN.
struct Series {
  std::vector<std::string> time;
  std::vector<double> x;
  std::vector<double> y;
};

/// Throws ParseError naming the offending line (1-based).
Series parse_series_csv(std::string_view text);
std::string format_series_csv(const Series& series);
Series read_series_csv(const std::filesystem::path& path);
void write_series_csv(const std::filesystem::path& path, const Series& series);

/// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_number);
std::string quote_csv_field(std::string_view field);

/// Shortest text that parses back to the same double; "" for NaN.
std::string format_number(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// `lat,lon,n_used,pc,pc0,pcs`, one row per evaluated cell.
std::string format_eval_csv(const EvalReport& report);
/// Aggregate, metadata and excluded cells.
std::string format_eval_json(const EvalReport& report);
std::string format_skill_csv(const EvalReport& report, std::span<const double> reference,
                             std::span<const CellSkill> skill);
std::string format_pvalue_csv(std::span<const CellPValue> cells);

struct CompareMeta {
  std::string model_a;
  std::string model_b;
  int lead_days = 1;
  std::size_t n_permutations = 1000;
  std::uint64_t seed = 0;
};
std::string format_box_summary_csv(const CompareMeta& meta, const BoxSummary& box);

std::string format_metric_csv(const MetricTable& table);
std::string format_metric_text(const MetricTable& table);

}  // namespace pcrps::io
