#include "cli/table.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

namespace atomchain::cli {

using ojson = nlohmann::ordered_json;

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column named '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return double(*i);
  throw std::runtime_error("cell '" + name + "' is not numeric");
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown output format '" + s + "'");
}

std::optional<int> fixed_decimals(const std::string& name) {
  const std::string suffix = "_3dp";
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return 3;
  return std::nullopt;
}

double round_half_away(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

std::string format_real(double v) { return fmt::format("{}", v); }

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& cell, const std::string& column_name) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return fmt::format("{}", v);
        } else if constexpr (std::is_same_v<T, double>) {
          if (auto d = fixed_decimals(column_name); d && std::isfinite(v))
            return fmt::format("{:.{}f}", round_half_away(v, *d), *d);
          return format_real(v);
        } else {
          return v;
        }
      },
      cell);
}

void write_csv(const Table& t, std::ostream& os) {
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << csv_escape(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_escape(format_cell(row[i], t.columns[i]));
    os << '\n';
  }
}

namespace {

ojson cell_to_json(const Cell& cell, const std::string& column_name) {
  return std::visit(
      [&](const auto& v) -> ojson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_real(v);
          if (auto d = fixed_decimals(column_name)) return round_half_away(v, *d);
          return v;
        } else {
          return v;
        }
      },
      cell);
}

Cell cell_from_json(const ojson& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) {
    // non-finite reals are written as strings
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  throw std::runtime_error("unsupported JSON cell: " + j.dump());
}

}  // namespace

void write_json(const Table& t, std::ostream& os) {
  // Repeated keys (several notes, say) become arrays.
  ojson meta = ojson::object();
  for (const auto& [k, v] : t.meta) {
    if (!meta.contains(k))
      meta[k] = v;
    else if (meta[k].is_array())
      meta[k].push_back(v);
    else
      meta[k] = ojson::array({meta[k], v});
  }
  ojson cols = t.columns;
  os << "{\n  \"meta\": " << meta.dump() << ",\n  \"columns\": " << cols.dump()
     << ",\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ojson row = ojson::array();
    for (std::size_t i = 0; i < t.rows[r].size(); ++i)
      row.push_back(cell_to_json(t.rows[r][i], t.columns[i]));
    os << (r ? ",\n    " : "\n    ") << row.dump();
  }
  os << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_table(const Table& t, Format f, std::ostream& os) {
  if (f == Format::csv)
    write_csv(t, os);
  else
    write_json(t, os);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

Cell parse_csv_cell(const std::string& s) {
  if (s.empty()) return std::monostate{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (s.find_first_of(".eEin") == std::string::npos) {
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(first, last, i);
    if (ec == std::errc{} && p == last) return i;
  }
  double d = 0.0;
  auto [p, ec] = std::from_chars(first, last, d);
  if (ec == std::errc{} && p == last) return d;
  return s;
}

}  // namespace

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!have_header && line.rfind("# ", 0) == 0) {
      const auto pos = line.find(": ", 2);
      if (pos == std::string::npos) throw std::runtime_error("malformed metadata line: " + line);
      t.meta.emplace_back(line.substr(2, pos - 2), line.substr(pos + 2));
      continue;
    }
    if (!have_header) {
      t.columns = split_csv_line(line);
      have_header = true;
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != t.columns.size())
      throw std::runtime_error("CSV row has " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(t.columns.size()));
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_csv_cell(f));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV input has no header row");
  return t;
}

Table read_json(std::istream& is) {
  const auto j = ojson::parse(is);
  Table t;
  for (const auto& [k, v] : j.at("meta").items()) {
    if (v.is_array())
      for (const auto& e : v) t.meta.emplace_back(k, e.get<std::string>());
    else
      t.meta.emplace_back(k, v.get<std::string>());
  }
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    std::vector<Cell> cells;
    for (const auto& c : row) cells.push_back(cell_from_json(c));
    if (cells.size() != t.columns.size()) throw std::runtime_error("JSON row width mismatch");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table read_table(std::istream& is, Format f) {
  return f == Format::csv ? read_csv(is) : read_json(is);
}

}  // namespace atomchain::cli
