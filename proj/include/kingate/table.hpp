#pragma once

// Tabular command output. The same table serializes to CSV (RFC 4180, CRLF
// line ends, 17 significant digits) or to JSON with identical values.

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kingate {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;  // parameter echo
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  void add_meta(std::string key, double value);
  /// Throws std::logic_error if the row width differs from the column count.
  void add_row(std::vector<Cell> row);
  const std::string* meta(const std::string& key) const;
};

/// Metadata as leading "# key = value" lines, then a header row and the data.
std::string to_csv(const Table& table);

/// {"parameters": {...}, "columns": [...], "rows": [[...], ...]}.
/// Non-finite doubles are written as the strings "nan", "inf", "-inf".
std::string to_json(const Table& table);

std::string format_cell(const Cell& cell);

}  // namespace kingate
