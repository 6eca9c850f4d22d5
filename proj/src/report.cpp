#include "infsup/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "infsup/errors.hpp"

namespace infsup::report {

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  if (value == 0.0) {
    return "0";  // folds -0
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<Cell> row) {
  INFSUP_THROW_IF(row.size() != columns_.size(), ErrorCode::DimensionMismatch,
                  "CSV row has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(columns_.size()));
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (const auto& cell : row) {
    if (const auto* d = std::get_if<double>(&cell)) {
      cells.push_back(format_number(*d));
    } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
      cells.push_back(std::to_string(*i));
    } else {
      cells.push_back(std::get<std::string>(cell));
    }
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::add_summary(std::string key, double value) {
  summary_.emplace_back(std::move(key), format_number(value));
}

void CsvTable::add_summary(std::string key, std::string value) {
  summary_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_check(std::string name, bool passed) {
  checks_.push_back({std::move(name), passed});
}

bool CsvTable::all_passed() const noexcept {
  for (const auto& c : checks_) {
    if (!c.passed) {
      return false;
    }
  }
  return true;
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out << (i ? "," : "") << columns_[i];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << row[i];
    }
    out << '\n';
  }
  out << "#footer";
  for (const auto& [k, v] : summary_) {
    out << ',' << k << '=' << v;
  }
  for (const auto& c : checks_) {
    out << ',' << c.name << '=' << (c.passed ? "pass" : "fail");
  }
  out << '\n';
}

std::string CsvTable::str() const {
  std::ostringstream ss;
  write(ss);
  return ss.str();
}

}  // namespace infsup::report
