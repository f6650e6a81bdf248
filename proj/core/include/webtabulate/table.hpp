#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webtabulate/tree.hpp"

namespace webtabulate {

inline constexpr std::string_view kMetadataTable = "metadata";

/// A named flat table of text cells. Column names may repeat; columns are
/// matched across tables by (name, occurrence) so `url` and the second `url`
/// stay distinct.
class Table {
 public:
  using Row = std::vector<Cell>;

  Table() = default;
  explicit Table(std::string name, std::vector<std::string> columns = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return columns_.size(); }

  /// Appends a row; throws Errc::InvalidArgument if its width is wrong.
  void add_row(Row row);

  /// Appends a column with `fill` in every existing row.
  void add_column(std::string name, const Cell& fill);

  /// Index of the `occurrence`-th (0-based) column called `name`, or npos.
  std::size_t find_column(std::string_view name, std::size_t occurrence = 0) const noexcept;

  /// Cells of the first column called `name`; throws InvalidArgument if absent.
  std::vector<Cell> column(std::string_view name) const;

  friend bool operator==(const Table&, const Table&) = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

/// Ordered collection of uniquely named tables; always holds "metadata"
/// as its first table.
class TableSet {
 public:
  TableSet();

  const Table& metadata() const { return tables_.front(); }
  Table& metadata() { return tables_.front(); }

  const std::vector<Table>& tables() const noexcept { return tables_; }
  std::size_t size() const noexcept { return tables_.size(); }

  const Table* find(std::string_view name) const noexcept;
  Table* find(std::string_view name) noexcept;
  /// Throws Errc::InvalidArgument if there is no such table.
  const Table& at(std::string_view name) const;

  bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }
  std::vector<std::string> names() const;

  /// Adds a new table or replaces the metadata table. Throws InvalidArgument
  /// on a duplicate name.
  void put(Table table);

  auto begin() const noexcept { return tables_.begin(); }
  auto end() const noexcept { return tables_.end(); }
  auto begin() noexcept { return tables_.begin(); }
  auto end() noexcept { return tables_.end(); }

  friend bool operator==(const TableSet&, const TableSet&) = default;

 private:
  std::vector<Table> tables_;
};

/// Row-binds two tables of the same name. Columns are the ordered union
/// (a's columns, then b's columns not matched by name and occurrence);
/// missing cells become null. Throws Errc::NameMismatch.
Table bind_tables(const Table& a, const Table& b);

/// Binds equally named tables across sets in input order; tables appear in
/// order of first occurrence.
TableSet merge_tablesets(const std::vector<TableSet>& sets);

/// Ordered union of column lists with (name, occurrence) matching.
std::vector<std::string> union_columns(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b);

/// `t` with its columns reordered (and extended with nulls) to `columns`.
Table conform_columns(const Table& t, const std::vector<std::string>& columns);

}  // namespace webtabulate
