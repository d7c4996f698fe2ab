#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qkt {

enum class ColumnKind { Real, Integer, Text };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Real;
  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<double, long long, std::string>;

/// Comma-separated table with a header line. Reals are written with 17
/// significant digits so a write/read cycle reproduces every double exactly.
class Table {
 public:
  explicit Table(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Throws InvalidArgument if the row does not match the column kinds.
  void add_row(std::vector<Cell> row);

  std::size_t column_index(const std::string& name) const;
  double real(std::size_t row, const std::string& column) const;
  long long integer(std::size_t row, const std::string& column) const;
  const std::string& text(std::size_t row, const std::string& column) const;

  void write(std::ostream& os) const;
  std::string to_csv() const;

  /// Parses a table written by write(); the header must match `columns`.
  static Table read(std::istream& is, const std::vector<Column>& columns);

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double v);

void write_table(const Table& table, const std::filesystem::path& path);
Table read_table(const std::filesystem::path& path, const std::vector<Column>& columns);

}  // namespace qkt
