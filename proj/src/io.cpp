#include "pcrps/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace pcrps::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

std::uint64_t get_u64(std::string_view bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + b])) << (8 * b);
  }
  return v;
}

double parse_double(std::string_view field, std::size_t line) {
  if (field.empty() || field == "NaN" || field == "nan" || field == "NA") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    parse_error("line " + std::to_string(line) + ": cannot parse number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string encode_grid(const GridField& field) {
  field.validate();
  json header;
  header["dims"] = {field.n_time(), field.n_lat(), field.n_lon()};
  header["times"] = field.times;
  header["lats"] = field.lats;
  header["lons"] = field.lons;
  header["variable"] = field.variable;
  header["units"] = field.units;
  const std::string text = header.dump();

  std::string out;
  out.reserve(8 + text.size() + 8 * field.values.size());
  put_u64(out, text.size());
  out += text;
  for (double v : field.values) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

GridField decode_grid(std::string_view bytes) {
  if (bytes.size() < 8) parse_error("grid file shorter than its length prefix");
  const std::uint64_t header_len = get_u64(bytes, 0);
  if (header_len > bytes.size() - 8) parse_error("grid header length exceeds file size");

  GridField field;
  std::size_t n_time = 0, n_lat = 0, n_lon = 0;
  try {
    const json header = json::parse(bytes.substr(8, header_len));
    const auto dims = header.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != 3) parse_error("dims must have three entries");
    n_time = dims[0];
    n_lat = dims[1];
    n_lon = dims[2];
    field.times = header.at("times").get<std::vector<std::int64_t>>();
    field.lats = header.at("lats").get<std::vector<double>>();
    field.lons = header.at("lons").get<std::vector<double>>();
    field.variable = header.value("variable", "");
    field.units = header.value("units", "");
  } catch (const json::exception& e) {
    parse_error(std::string("bad grid header: ") + e.what());
  }
  if (field.times.size() != n_time || field.lats.size() != n_lat || field.lons.size() != n_lon) {
    parse_error("grid dims disagree with coordinate lengths");
  }
  const std::size_t count = n_time * n_lat * n_lon;
  const std::size_t payload = bytes.size() - 8 - header_len;
  if (payload != 8 * count) {
    parse_error("grid payload has " + std::to_string(payload) + " bytes, expected " +
                std::to_string(8 * count));
  }
  field.values.resize(count);
  const std::size_t base = 8 + header_len;
  for (std::size_t i = 0; i < count; ++i) {
    field.values[i] = std::bit_cast<double>(get_u64(bytes, base + 8 * i));
  }
  try {
    field.validate();
  } catch (const Error& e) {
    parse_error(std::string("invalid grid: ") + e.what());
  }
  return field;
}

void write_grid(const std::filesystem::path& path, const GridField& field) {
  write_file(path, encode_grid(field));
}

GridField read_grid(const std::filesystem::path& path) {
  try {
    return decode_grid(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) parse_error(path.string() + ": " + e.what());
    throw;
  }
}

std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::string cur;
  std::size_t i = 0;
  while (true) {
    cur.clear();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) {
          parse_error("line " + std::to_string(line_number) + ": unterminated quoted field");
        }
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cur.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        cur.push_back(line[i++]);
      }
      if (i < line.size() && line[i] != ',') {
        parse_error("line " + std::to_string(line_number) + ": text after closing quote");
      }
    } else {
      while (i < line.size() && line[i] != ',') {
        if (line[i] == '"') {
          parse_error("line " + std::to_string(line_number) + ": quote inside unquoted field");
        }
        cur.push_back(line[i++]);
      }
    }
    fields.push_back(cur);
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return fields;
}

std::string quote_csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Series parse_series_csv(std::string_view text) {
  Series s;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      const auto header = split_csv_record(line, line_number);
      if (header != std::vector<std::string>{"time", "x", "y"}) {
        parse_error("line 1: expected header 'time,x,y'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_csv_record(line, line_number);
    if (fields.size() != 3) {
      parse_error("line " + std::to_string(line_number) + ": expected 3 fields, found " +
                  std::to_string(fields.size()));
    }
    s.time.push_back(fields[0]);
    s.x.push_back(parse_double(fields[1], line_number));
    s.y.push_back(parse_double(fields[2], line_number));
  }
  if (!header_seen) parse_error("line 1: empty file, expected header 'time,x,y'");
  return s;
}

std::string format_series_csv(const Series& series) {
  std::string out = "time,x,y\n";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    out += quote_csv_field(series.time[i]);
    out += ',';
    out += format_number(series.x[i]);
    out += ',';
    out += format_number(series.y[i]);
    out += '\n';
  }
  return out;
}

Series read_series_csv(const std::filesystem::path& path) {
  return parse_series_csv(read_file(path));
}

void write_series_csv(const std::filesystem::path& path, const Series& series) {
  write_file(path, format_series_csv(series));
}

std::string format_eval_csv(const EvalReport& report) {
  std::string out = "lat,lon,n_used,pc,pc0,pcs\n";
  for (const auto& c : report.cells) {
    out += format_number(c.lat) + ',' + format_number(c.lon) + ',' + std::to_string(c.n_used) +
           ',' + format_number(c.summary.pc) + ',' + format_number(c.summary.pc0) + ',' +
           format_number(c.summary.pcs) + '\n';
  }
  return out;
}

std::string format_eval_json(const EvalReport& report) {
  json j;
  j["model"] = report.model;
  j["truth"] = report.truth;
  j["lead_days"] = report.lead_days;
  j["weighting"] = "cos(latitude), renormalized over evaluated cells";
  j["min_pairs"] = 2;
  j["aggregate"] = {{"pc", report.aggregate.pc},
                    {"pc0", report.aggregate.pc0},
                    {"pcs", report.aggregate.pcs},
                    {"weight_sum", report.aggregate.weight_sum},
                    {"n_cells", report.aggregate.n_cells}};
  json excluded = json::array();
  for (const auto& e : report.excluded) {
    excluded.push_back({{"lat", e.lat}, {"lon", e.lon}, {"n_used", e.n_used}});
  }
  j["excluded"] = excluded;
  return j.dump(2) + "\n";
}

std::string format_skill_csv(const EvalReport& report, std::span<const double> reference,
                             std::span<const CellSkill> skill) {
  std::string out = "lat,lon,pc,reference,skill,degenerate\n";
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    const auto& c = report.cells[i];
    out += format_number(c.lat) + ',' + format_number(c.lon) + ',' + format_number(c.summary.pc) +
           ',' + format_number(reference[i]) + ',' + format_number(skill[i].value) + ',' +
           (skill[i].degenerate ? "1" : "0") + '\n';
  }
  return out;
}

std::string format_pvalue_csv(std::span<const CellPValue> cells) {
  std::string out = "lat,lon,n_used,p\n";
  for (const auto& c : cells) {
    out += format_number(c.lat) + ',' + format_number(c.lon) + ',' + std::to_string(c.n_used) +
           ',' + format_number(c.p_value) + '\n';
  }
  return out;
}

std::string format_box_summary_csv(const CompareMeta& meta, const BoxSummary& box) {
  std::string out =
      "model_a,model_b,lead_days,block_length,partial_block,n_permutations,seed,count,min,q1,"
      "median,q3,max\n";
  out += quote_csv_field(meta.model_a) + ',' + quote_csv_field(meta.model_b) + ',' +
         std::to_string(meta.lead_days) + ',' + std::to_string(2 * meta.lead_days) +
         ",kept," + std::to_string(meta.n_permutations) + ',' + std::to_string(meta.seed) + ',' +
         std::to_string(box.count) + ',' + format_number(box.min) + ',' + format_number(box.q1) +
         ',' + format_number(box.median) + ',' + format_number(box.q3) + ',' +
         format_number(box.max) + '\n';
  return out;
}

std::string format_metric_csv(const MetricTable& table) {
  std::ostringstream alpha;
  alpha << table.alpha;
  std::string out = "model,rmse,mae,ql_" + alpha.str() + ",pc,acc,cpa,pcs\n";
  for (const auto& r : table.rows) {
    out += quote_csv_field(r.label) + ',' + format_number(r.rmse) + ',' + format_number(r.mae) +
           ',' + format_number(r.quantile_loss) + ',' + format_number(r.pc) + ',' +
           format_number(r.acc) + ',' + format_number(r.cpa) + ',' + format_number(r.pcs) + '\n';
  }
  return out;
}

std::string format_metric_text(const MetricTable& table) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "model" << std::right;
  std::ostringstream ql;
  ql << "QL" << table.alpha;
  for (const char* h : {"RMSE", "MAE"}) out << std::setw(10) << h;
  out << std::setw(10) << ql.str();
  for (const char* h : {"PC", "ACC", "CPA", "PCS"}) out << std::setw(10) << h;
  out << '\n';
  out << std::fixed;
  for (const auto& r : table.rows) {
    out << std::left << std::setw(14) << r.label << std::right << std::setprecision(3);
    for (double v : {r.rmse, r.mae, r.quantile_loss, r.pc, r.acc, r.cpa, r.pcs}) {
      out << std::setw(10) << v;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pcrps::io
