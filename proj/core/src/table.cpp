#include "webtabulate/table.hpp"

#include <map>
#include <utility>

#include "webtabulate/error.hpp"

namespace webtabulate {
namespace {

using ColumnKey = std::pair<std::string, std::size_t>;

std::vector<ColumnKey> keyed(const std::vector<std::string>& columns) {
  std::map<std::string, std::size_t> seen;
  std::vector<ColumnKey> keys;
  keys.reserve(columns.size());
  for (const auto& name : columns) keys.emplace_back(name, seen[name]++);
  return keys;
}

}  // namespace

Table::Table(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  if (name_.empty()) throw Error(Errc::InvalidArgument, "table name must be non-empty");
}

void Table::add_row(Row row) {
  if (row.size() != columns_.size()) {
    throw Error(Errc::InvalidArgument, "row of width " + std::to_string(row.size()) +
                                           " added to table '" + name_ + "' with " +
                                           std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(row));
}

void Table::add_column(std::string name, const Cell& fill) {
  columns_.push_back(std::move(name));
  for (auto& row : rows_) row.push_back(fill);
}

std::size_t Table::find_column(std::string_view name, std::size_t occurrence) const noexcept {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name && occurrence-- == 0) return i;
  }
  return npos;
}

std::vector<Cell> Table::column(std::string_view name) const {
  const auto index = find_column(name);
  if (index == npos) {
    throw Error(Errc::InvalidArgument,
                "table '" + name_ + "' has no column '" + std::string(name) + "'");
  }
  std::vector<Cell> cells;
  cells.reserve(rows_.size());
  for (const auto& row : rows_) cells.push_back(row[index]);
  return cells;
}

TableSet::TableSet() { tables_.emplace_back(std::string(kMetadataTable)); }

const Table* TableSet::find(std::string_view name) const noexcept {
  for (const auto& t : tables_) {
    if (t.name() == name) return &t;
  }
  return nullptr;
}

Table* TableSet::find(std::string_view name) noexcept {
  for (auto& t : tables_) {
    if (t.name() == name) return &t;
  }
  return nullptr;
}

const Table& TableSet::at(std::string_view name) const {
  if (const auto* t = find(name)) return *t;
  throw Error(Errc::InvalidArgument, "no table '" + std::string(name) + "'");
}

std::vector<std::string> TableSet::names() const {
  std::vector<std::string> out;
  out.reserve(tables_.size());
  for (const auto& t : tables_) out.push_back(t.name());
  return out;
}

void TableSet::put(Table table) {
  if (table.name() == kMetadataTable) {
    tables_.front() = std::move(table);
    return;
  }
  if (find(table.name()) != nullptr) {
    throw Error(Errc::InvalidArgument, "duplicate table name '" + table.name() + "'");
  }
  tables_.push_back(std::move(table));
}

std::vector<std::string> union_columns(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  std::map<std::string, std::size_t> available;
  for (const auto& name : a) ++available[name];
  std::map<std::string, std::size_t> seen;
  for (const auto& name : b) {
    if (seen[name]++ >= available[name]) out.push_back(name);
  }
  return out;
}

Table conform_columns(const Table& t, const std::vector<std::string>& columns) {
  std::map<ColumnKey, std::size_t> source;
  const auto keys = keyed(t.columns());
  for (std::size_t i = 0; i < keys.size(); ++i) source[keys[i]] = i;

  std::vector<std::size_t> mapping;
  mapping.reserve(columns.size());
  for (const auto& key : keyed(columns)) {
    auto it = source.find(key);
    mapping.push_back(it == source.end() ? Table::npos : it->second);
  }

  Table out(t.name(), columns);
  for (const auto& row : t.rows()) {
    Table::Row cells;
    cells.reserve(columns.size());
    for (auto idx : mapping) cells.push_back(idx == Table::npos ? Cell{} : row[idx]);
    out.add_row(std::move(cells));
  }
  return out;
}

Table bind_tables(const Table& a, const Table& b) {
  if (a.name() != b.name()) {
    throw Error(Errc::NameMismatch, "cannot bind '" + a.name() + "' and '" + b.name() + "'");
  }
  const auto columns = union_columns(a.columns(), b.columns());
  Table out = conform_columns(a, columns);
  const Table tail = conform_columns(b, columns);
  for (const auto& row : tail.rows()) out.add_row(row);
  return out;
}

TableSet merge_tablesets(const std::vector<TableSet>& sets) {
  // Columns are unioned first so each input row is conformed exactly once.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>, std::less<>> columns;
  for (const auto& set : sets) {
    for (const auto& t : set) {
      auto [it, inserted] = columns.try_emplace(t.name());
      if (inserted) order.push_back(t.name());
      it->second = union_columns(it->second, t.columns());
    }
  }

  TableSet out;
  for (const auto& name : order) {
    Table merged(name, columns[name]);
    for (const auto& set : sets) {
      if (const auto* t = set.find(name)) {
        const Table conformed = conform_columns(*t, merged.columns());
        for (const auto& row : conformed.rows()) merged.add_row(row);
      }
    }
    out.put(std::move(merged));
  }
  return out;
}

}  // namespace webtabulate
