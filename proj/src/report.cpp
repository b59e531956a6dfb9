#include "psl2lab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "psl2lab/error.hpp"

namespace psl2lab::report {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw precondition_error("unsupported report format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

namespace {

std::string cell_text(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto* d = std::get_if<double>(&c)) return round12(*d);
  return std::get<std::string>(c);
}

}  // namespace

std::string emit_report(const Table& table, Format format) {
  if (format == Format::csv) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
    return out.str();
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) obj[table.header[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return emit_json(arr);
}

std::string emit_json(const nlohmann::json& value) { return value.dump(2) + "\n"; }

}  // namespace psl2lab::report
