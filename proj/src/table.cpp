#include "qkt/table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qkt/error.hpp"

namespace qkt {

namespace {

bool matches(const Cell& cell, ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Real: return std::holds_alternative<double>(cell);
    case ColumnKind::Integer: return std::holds_alternative<long long>(cell);
    case ColumnKind::Text: return std::holds_alternative<std::string>(cell);
  }
  return false;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line_no) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("malformed number '" + s + "' on line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw InvalidArgument("table row has the wrong number of cells");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!matches(row[i], columns_[i].kind)) {
      throw InvalidArgument("table cell type mismatch in column '" + columns_[i].name + "'");
    }
  }
  rows_.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  throw InvalidArgument("no column named '" + name + "'");
}

double Table::real(std::size_t row, const std::string& column) const {
  return std::get<double>(rows_.at(row)[column_index(column)]);
}

long long Table::integer(std::size_t row, const std::string& column) const {
  return std::get<long long>(rows_.at(row)[column_index(column)]);
}

const std::string& Table::text(std::size_t row, const std::string& column) const {
  return std::get<std::string>(rows_.at(row)[column_index(column)]);
}

void Table::write(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i].name;
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&os](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_real(v);
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
}

std::string Table::to_csv() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

Table Table::read(std::istream& is, const std::vector<Column>& columns) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty table: missing header");
  const auto header = split(line);
  if (header.size() != columns.size()) throw IoError("header has " + std::to_string(header.size()) + " columns");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != columns[i].name) {
      throw IoError("unexpected header column '" + header[i] + "', wanted '" + columns[i].name + "'");
    }
  }

  Table t(columns);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != columns.size()) throw IoError("wrong field count on line " + std::to_string(line_no));
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      switch (columns[i].kind) {
        case ColumnKind::Real: row.emplace_back(parse_number<double>(fields[i], line_no)); break;
        case ColumnKind::Integer: row.emplace_back(parse_number<long long>(fields[i], line_no)); break;
        case ColumnKind::Text: row.emplace_back(fields[i]); break;
      }
    }
    t.rows_.push_back(std::move(row));
  }
  return t;
}

void write_table(const Table& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  table.write(os);
  os.flush();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

Table read_table(const std::filesystem::path& path, const std::vector<Column>& columns) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return Table::read(is, columns);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace qkt
