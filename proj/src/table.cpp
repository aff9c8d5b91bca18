#include "kingate/table.hpp"

#include "kingate/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kingate {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string non_finite(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void Table::add_meta(std::string key, double value) {
  add_meta(std::move(key), format_double(value));
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

const std::string* Table::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

std::string format_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell))
    return std::isfinite(*d) ? format_double(*d) : non_finite(*d);
  if (const long long* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& [k, v] : table.metadata) out << "# " << k << " = " << v << "\r\n";
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "," : "") << csv_field(table.columns[j]);
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << csv_field(format_cell(row[j]));
    out << "\r\n";
  }
  return out.str();
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) doc["parameters"][k] = v;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d))
          r.push_back(*d);
        else
          r.push_back(non_finite(*d));
      } else if (const long long* i = std::get_if<long long>(&cell)) {
        r.push_back(*i);
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

}  // namespace kingate
