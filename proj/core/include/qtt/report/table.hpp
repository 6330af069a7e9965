#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qtt/units.hpp"

namespace qtt::report {

using Cell = std::variant<double, std::string>;

enum class ColumnKind { number, label };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::number;
  Unit unit = Unit::dimensionless;

  static Column number(std::string name, Unit unit) {
    return {std::move(name), ColumnKind::number, unit};
  }
  static Column label(std::string name) { return {std::move(name), ColumnKind::label}; }
};

/// A rectangular, unit-annotated table that ends up as one CSV file.
class FigureTable {
public:
  FigureTable(std::string name, std::vector<Column> columns, std::string provenance);

  /// Throws InvalidArgument if the row has the wrong arity or a cell type
  /// does not match its column kind.
  void add_row(std::vector<Cell> row);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  const std::string& provenance() const noexcept { return provenance_; }
  const std::string& config_hash() const noexcept { return config_hash_; }
  void set_config_hash(std::string hash) { config_hash_ = std::move(hash); }

  std::size_t column_index(std::string_view name) const;
  double number(std::size_t row, std::string_view column) const;
  const std::string& label(std::size_t row, std::string_view column) const;
  std::vector<double> number_column(std::string_view column) const;

private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::string provenance_;
  std::string config_hash_;
};

bool operator==(const FigureTable& a, const FigureTable& b);

/// 17 significant digits, locale independent; parse_number(format_number(x)) == x.
std::string format_number(double value);
double parse_number(std::string_view text);

/// Line 1: '#' followed by a JSON object with name, provenance, config hash and
/// per-column units. Line 2: column names. Then one line per row.
void write_csv(const FigureTable& table, std::ostream& out);
std::string to_csv(const FigureTable& table);
FigureTable read_csv(std::istream& in);
FigureTable parse_csv(std::string_view text);

void write_csv_file(const FigureTable& table, const std::filesystem::path& path);
FigureTable read_csv_file(const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t value);

/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

} // namespace qtt::report
