#pragma once

#include <string>

#include "webtabulate/mapper.hpp"
#include "webtabulate/table.hpp"
#include "webtabulate/tree.hpp"

namespace testing_support {

/// Brute-force reference mapping. Every node is enumerated with its path;
/// a node is a record when its label group under the parent is all-inner and
/// repeated (or the parent is a sequence); each leaf belongs to its nearest
/// record ancestor, or to metadata if there is none.
webtabulate::TableSet oracle_map(const webtabulate::TreeNode& root,
                                 webtabulate::ColumnMode mode = webtabulate::ColumnMode::Short);

/// Same tables, rows and per-column cells, ignoring column order. Columns are
/// identified by (name, occurrence). On mismatch `why` explains the first one.
bool equal_up_to_column_order(const webtabulate::TableSet& a, const webtabulate::TableSet& b,
                              std::string* why = nullptr);

}  // namespace testing_support
