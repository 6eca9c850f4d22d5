#pragma once

// CSV emission shared by all report types. Floating values are written with
// 12 significant digits through the C locale so output is byte-stable.
// Every table ends with one footer line:
//   #footer,key=value,...,check_name=pass|fail,...

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace infsup::report {

std::string format_number(double value);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Check {
  std::string name;
  bool passed = false;
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  void add_summary(std::string key, double value);
  void add_summary(std::string key, std::string value);
  void add_check(std::string name, bool passed);

  [[nodiscard]] const std::vector<Check>& checks() const noexcept { return checks_; }
  [[nodiscard]] bool all_passed() const noexcept;
  [[nodiscard]] std::size_t row_count() const noexcept { return rows_.size(); }

  void write(std::ostream& out) const;
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> summary_;
  std::vector<Check> checks_;
};

}  // namespace infsup::report
