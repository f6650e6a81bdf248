#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "webtabulate/table.hpp"

namespace webtabulate {

/// Repeated names get ".1", ".2", ... in order of appearance: [url, url] -> [url, url.1].
/// A generated name that is itself taken is bumped further.
std::vector<std::string> dedupe_column_names(const std::vector<std::string>& columns);

/// Header then one line per row, CRLF terminated. Fields with comma, quote,
/// CR or LF are quoted with inner quotes doubled; null and "" both become an
/// empty field. A table without columns writes nothing. Throws Errc::SinkError.
void write_csv(const Table& table, std::ostream& out);

/// One JSON object per row keyed by de-duplicated column names; null cells
/// are JSON null. LF terminated. Throws Errc::SinkError.
void write_jsonlines(const Table& table, std::ostream& out);

std::string to_csv(const Table& table);
std::string to_jsonlines(const Table& table);

/// Escapes one CSV field per the quoting rule above.
std::string csv_field(const Cell& cell);

}  // namespace webtabulate
