#pragma once

// Deterministic CSV / JSON serialization of result tables.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace psl2lab::report {

enum class Format { csv, json };

/// "csv" or "json"; anything else is an error.
Format parse_format(std::string_view name);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// %.12g
std::string format_number(double v);
/// v rounded to 12 significant digits, so JSON dumps match the CSV text.
double round12(double v);

/// CSV with a header row (header only when empty), or a JSON array of
/// objects keyed by the header.
std::string emit_report(const Table& table, Format format);

/// Sorted keys, two-space indent, trailing newline.
std::string emit_json(const nlohmann::json& value);

}  // namespace psl2lab::report
