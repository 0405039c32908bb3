#pragma once

#include <string>
#include <variant>
#include <vector>

namespace jacobs {

// Empty cells (monostate) print as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;

  std::string to_csv() const;
  // Same cells, same text for numbers as the CSV.
  std::string to_json() const;
};

// %.17g, with "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

}  // namespace jacobs
