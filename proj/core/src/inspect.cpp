#include <algorithm>
#include <sstream>

#include "webtabulate/inspect.hpp"

namespace webtabulate {

StructureReport summarize(const TableSet& set) {
  StructureReport report;
  for (const auto& table : set) {
    report.tables.push_back({table.name(), table.column_count(), table.columns()});
  }
  return report;
}

namespace {

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

// Items are "name, " joined by a single space; a line break is taken before
// an item that would run past `width`, after the separator was written.
void fill_variables(std::ostringstream& out, const std::vector<std::string>& variables,
                    std::size_t width) {
  std::size_t used = 0;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const std::string item = variables[i] + ", ";
    if (i > 0) out << ' ';
    if (i > 0 && used + item.size() + 1 > width) {
      out << '\n';
      used = 0;
    }
    out << item;
    used += item.size() + 1;
  }
  out << '\n';
}

}  // namespace

std::string render_summary(const StructureReport& report, std::size_t width) {
  std::ostringstream out;
  out << "API data summary: \n";
  out << "=================\n\n";
  out << "The API data has been split into the following " << report.tables.size()
      << " data frames:\n\n";

  std::size_t name_width = 0;
  std::size_t length_width = std::string_view("Length").size();
  for (const auto& t : report.tables) {
    name_width = std::max(name_width, t.name.size());
    length_width = std::max(length_width, std::to_string(t.variable_count).size());
  }
  const std::string class_name = "data.frame";
  out << std::string(name_width, ' ') << ' ' << pad("Length", length_width) << ' '
      << pad("Class", class_name.size()) << ' ' << "Mode\n";
  for (const auto& t : report.tables) {
    out << pad(t.name, name_width) << ' ' << pad(std::to_string(t.variable_count), length_width)
        << ' ' << class_name << ' ' << "list\n";
  }

  out << "\nThe respective data frame(s) contain the following variables:\n\n";
  for (std::size_t i = 0; i < report.tables.size(); ++i) {
    if (i > 0) out << '\n';
    out << i + 1 << ". " << report.tables[i].name << ":\n";
    fill_variables(out, report.tables[i].variables, width);
  }
  return out.str();
}

}  // namespace webtabulate
