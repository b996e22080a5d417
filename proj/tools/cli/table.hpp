#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace atomchain::cli {

/// A cell: empty, integer, real, or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Columns whose name ends in "_3dp" hold values printed with three fixed
/// decimals (half away from zero); every other real prints in shortest
/// round-trip form.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

enum class Format { csv, json };

Format parse_format(const std::string& s);

/// Fixed-decimal columns are rounded on write; "0.8125" in a _3dp column
/// prints as "0.813".
std::optional<int> fixed_decimals(const std::string& column_name);
double round_half_away(double v, int decimals);

std::string format_real(double v);
std::string format_cell(const Cell& cell, const std::string& column_name);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);
void write_table(const Table& t, Format f, std::ostream& os);

Table read_csv(std::istream& is);
Table read_json(std::istream& is);
Table read_table(std::istream& is, Format f);

}  // namespace atomchain::cli
