#include "qtt/report/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qtt/error.hpp"

namespace qtt::report {

namespace {

using json = nlohmann::json;

constexpr std::string_view kLabelUnit = "label";

bool same_cell(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return std::get<std::string>(a) == std::get<std::string>(b);
}

std::string quote_if_needed(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Error malformed(std::size_t line, const std::string& what) {
  return Error(ErrorCode::MalformedDataFile, "line " + std::to_string(line) + ": " + what);
}

} // namespace

FigureTable::FigureTable(std::string name, std::vector<Column> columns, std::string provenance)
    : name_(std::move(name)), columns_(std::move(columns)), provenance_(std::move(provenance)) {
  if (columns_.empty()) throw Error(ErrorCode::InvalidArgument, "table needs at least one column");
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (columns_[i].name == columns_[j].name) {
        throw Error(ErrorCode::InvalidArgument, "duplicate column '" + columns_[i].name + "'");
      }
    }
  }
}

void FigureTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    std::ostringstream msg;
    msg << name_ << ": row has " << row.size() << " cells, table has " << columns_.size()
        << " columns";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    const bool is_number = std::holds_alternative<double>(row[i]);
    if (is_number != (columns_[i].kind == ColumnKind::number)) {
      throw Error(ErrorCode::InvalidArgument,
                  name_ + ": cell type does not match column '" + columns_[i].name + "'");
    }
  }
  rows_.push_back(std::move(row));
}

std::size_t FigureTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, name_ + ": no column '" + std::string(name) + "'");
}

double FigureTable::number(std::size_t row, std::string_view column) const {
  return std::get<double>(rows_.at(row).at(column_index(column)));
}

const std::string& FigureTable::label(std::size_t row, std::string_view column) const {
  return std::get<std::string>(rows_.at(row).at(column_index(column)));
}

std::vector<double> FigureTable::number_column(std::string_view column) const {
  const std::size_t c = column_index(column);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(std::get<double>(r[c]));
  return out;
}

bool operator==(const FigureTable& a, const FigureTable& b) {
  if (a.name() != b.name() || a.provenance() != b.provenance() ||
      a.config_hash() != b.config_hash() || a.columns().size() != b.columns().size() ||
      a.rows().size() != b.rows().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.columns().size(); ++i) {
    const auto& x = a.columns()[i];
    const auto& y = b.columns()[i];
    if (x.name != y.name || x.kind != y.kind) return false;
    if (x.kind == ColumnKind::number && x.unit != y.unit) return false;
  }
  for (std::size_t r = 0; r < a.rows().size(); ++r) {
    for (std::size_t c = 0; c < a.columns().size(); ++c) {
      if (!same_cell(a.rows()[r][c], b.rows()[r][c])) return false;
    }
  }
  return true;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw Error(ErrorCode::MalformedDataFile, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  if (quoted) throw Error(ErrorCode::MalformedDataFile, "unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

void write_csv(const FigureTable& table, std::ostream& out) {
  json header;
  header["name"] = table.name();
  header["provenance"] = table.provenance();
  header["config_hash"] = table.config_hash();
  json cols = json::array();
  for (const auto& c : table.columns()) {
    cols.push_back({{"name", c.name},
                    {"unit", c.kind == ColumnKind::label ? std::string(kLabelUnit)
                                                         : std::string(to_string(c.unit))}});
  }
  header["columns"] = std::move(cols);
  out << '#' << header.dump() << '\n';

  for (std::size_t i = 0; i < table.columns().size(); ++i) {
    if (i) out << ',';
    out << quote_if_needed(table.columns()[i].name);
  }
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* x = std::get_if<double>(&row[i])) {
        out << format_number(*x);
      } else {
        out << quote_if_needed(std::get<std::string>(row[i]));
      }
    }
    out << '\n';
  }
}

std::string to_csv(const FigureTable& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

FigureTable read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.empty() || line[0] != '#') {
    throw malformed(line_no, "missing '#' JSON header");
  }
  json header;
  try {
    header = json::parse(line.substr(1));
  } catch (const json::exception& e) {
    throw malformed(line_no, e.what());
  }

  std::vector<Column> columns;
  try {
    for (const auto& c : header.at("columns")) {
      const auto unit = c.at("unit").get<std::string>();
      const auto name = c.at("name").get<std::string>();
      if (unit == kLabelUnit) {
        columns.push_back(Column::label(name));
      } else if (const auto u = parse_unit(unit)) {
        columns.push_back(Column::number(name, *u));
      } else {
        throw malformed(line_no, "unknown unit '" + unit + "'");
      }
    }
    FigureTable table(header.at("name").get<std::string>(), std::move(columns),
                      header.at("provenance").get<std::string>());
    table.set_config_hash(header.at("config_hash").get<std::string>());

    ++line_no;
    if (!std::getline(in, line)) throw malformed(line_no, "missing column names");
    const auto names = split_csv_line(line);
    if (names.size() != table.columns().size()) throw malformed(line_no, "column count mismatch");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] != table.columns()[i].name) {
        throw malformed(line_no, "column '" + names[i] + "' does not match header");
      }
    }

    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto fields = split_csv_line(line);
      if (fields.size() != table.columns().size()) {
        throw malformed(line_no, "expected " + std::to_string(table.columns().size()) +
                                     " fields, got " + std::to_string(fields.size()));
      }
      std::vector<Cell> row;
      row.reserve(fields.size());
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (table.columns()[i].kind == ColumnKind::label) {
          row.emplace_back(fields[i]);
        } else {
          try {
            row.emplace_back(parse_number(fields[i]));
          } catch (const Error& e) {
            throw malformed(line_no, e.detail());
          }
        }
      }
      table.add_row(std::move(row));
    }
    return table;
  } catch (const json::exception& e) {
    throw malformed(line_no, e.what());
  }
}

FigureTable parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

void write_csv_file(const FigureTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string() + " for writing");
  write_csv(table, out);
  if (!out) throw Error(ErrorCode::InvalidArgument, "write to " + path.string() + " failed");
}

FigureTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedDataFile, "cannot open " + path.string());
  return read_csv(in);
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

} // namespace qtt::report
