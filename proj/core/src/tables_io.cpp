#include "webtabulate/tables_io.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

#include "webtabulate/error.hpp"

namespace webtabulate {

std::vector<std::string> dedupe_column_names(const std::vector<std::string>& columns) {
  std::set<std::string> taken(columns.begin(), columns.end());
  std::set<std::string> emitted;
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const auto& name : columns) {
    if (emitted.insert(name).second) {
      out.push_back(name);
      continue;
    }
    for (std::size_t k = 1;; ++k) {
      std::string candidate = name + "." + std::to_string(k);
      if (!taken.contains(candidate) && emitted.insert(candidate).second) {
        out.push_back(std::move(candidate));
        break;
      }
    }
  }
  return out;
}

std::string csv_field(const Cell& cell) {
  if (!cell) return {};
  const std::string& text = *cell;
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out;
  out.reserve(text.size() + 2);
  out += '"';
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

void write_line(std::ostream& out, const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(cells[i]);
  }
  out << "\r\n";
}

void check_sink(const std::ostream& out, const Table& table) {
  if (!out) throw Error(Errc::SinkError, "write failed for table '" + table.name() + "'");
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  if (table.column_count() == 0) return;
  std::vector<Cell> header;
  for (auto& name : dedupe_column_names(table.columns())) header.emplace_back(std::move(name));
  write_line(out, header);
  for (const auto& row : table.rows()) write_line(out, row);
  out.flush();
  check_sink(out, table);
}

void write_jsonlines(const Table& table, std::ostream& out) {
  const auto keys = dedupe_column_names(table.columns());
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      object[keys[i]] = row[i] ? nlohmann::ordered_json(*row[i]) : nlohmann::ordered_json(nullptr);
    }
    out << object.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
  out.flush();
  check_sink(out, table);
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

std::string to_jsonlines(const Table& table) {
  std::ostringstream out;
  write_jsonlines(table, out);
  return out.str();
}

}  // namespace webtabulate
