#include "webtabulate/mapper.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "webtabulate/ingest.hpp"

namespace webtabulate {
namespace {

struct Location {
  std::string path;   // position-indexed
  std::string shape;  // positions removed; identifies a type across records
};

Location descend(const Location& at, const TreeNode& child) {
  if (child.is_sequence()) return at;
  return {join_path(at.path, child.segment()), join_path(at.shape, child.label())};
}

std::string dotted(std::string_view slash_path) {
  std::string out;
  for (char c : slash_path) {
    if (c == '/') {
      if (!out.empty()) out += '.';
    } else {
      out += c;
    }
  }
  return out;
}

class TypeExtractor {
 public:
  ExtractedTypes run(const TreeNode& root) {
    if (root.is_leaf()) {
      result_.metadata.push_back({root.segment(), root.value(), ""});
      return std::move(result_);
    }
    const Location at{root_path(root), root_path(root)};
    walk_children(root, at, /*collect_metadata=*/true);
    return std::move(result_);
  }

 private:
  // Lifts record groups out of `node`'s subtree. Leaves outside records go to
  // metadata when `collect_metadata`; otherwise they stay in the returned
  // pruned child list for the enclosing record.
  std::vector<TreeNode> walk_children(const TreeNode& node, const Location& at,
                                      bool collect_metadata) {
    const auto labels = record_labels(node);
    const std::set<std::string> record_set(labels.begin(), labels.end());

    std::vector<TreeNode> kept;
    for (const auto& child : node.children()) {
      if (child.is_leaf()) {
        if (collect_metadata) {
          result_.metadata.push_back({child.segment(), child.value(), at.path});
        } else {
          kept.push_back(child);
        }
        continue;
      }
      if (record_set.contains(child.label())) {
        const Location record_at{join_path(at.path, child.segment()),
                                 join_path(at.shape, child.label())};
        const std::size_t slot = type_slot(record_at.shape, child.label(), at.path);
        auto pruned = walk_children(child, record_at, /*collect_metadata=*/false);
        result_.types[slot].records.push_back(
            {child.with_children(std::move(pruned)), record_at.path});
        continue;
      }
      auto sub = walk_children(child, descend(at, child), collect_metadata);
      if (!sub.empty()) kept.push_back(child.with_children(std::move(sub)));
    }
    return kept;
  }

  std::size_t type_slot(const std::string& shape, const std::string& label,
                        const std::string& origin) {
    if (auto it = by_shape_.find(shape); it != by_shape_.end()) return it->second;
    const std::string base = label.empty() ? std::string(kRootElementLabel) : label;
    std::string name = base;
    for (std::size_t k = 2; used_names_.contains(name); ++k) name = base + "_" + std::to_string(k);
    used_names_.insert(name);
    result_.types.push_back({name, {}, origin});
    return by_shape_[shape] = result_.types.size() - 1;
  }

  ExtractedTypes result_;
  std::map<std::string, std::size_t> by_shape_;
  std::set<std::string> used_names_{std::string(kMetadataTable)};
};

void collect_leaves(const TreeNode& node, const std::string& prefix, ColumnMode mode,
                    FlattenedRow& row) {
  for (const auto& child : node.children()) {
    if (child.is_leaf()) {
      std::string column = mode == ColumnMode::Short
                               ? child.segment()
                               : (prefix.empty() ? child.segment() : prefix + "." + child.segment());
      row.cells.emplace_back(std::move(column), child.value());
      continue;
    }
    std::string next = prefix;
    if (!child.is_sequence()) next = prefix.empty() ? child.segment() : prefix + "." + child.segment();
    collect_leaves(child, next, mode, row);
  }
}

Table table_from_rows(const std::string& name, const std::vector<FlattenedRow>& rows) {
  std::vector<std::string> columns;
  std::vector<Table> pieces;
  pieces.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> names;
    Table::Row cells;
    for (const auto& [column, cell] : row.cells) {
      names.push_back(column);
      cells.push_back(cell);
    }
    columns = union_columns(columns, names);
    Table piece(name, std::move(names));
    piece.add_row(std::move(cells));
    pieces.push_back(std::move(piece));
  }
  Table out(name, columns);
  for (const auto& piece : pieces) {
    const Table conformed = conform_columns(piece, columns);
    for (const auto& row : conformed.rows()) out.add_row(row);
  }
  return out;
}

}  // namespace

std::string root_path(const TreeNode& root) {
  if (root.label().empty() || root.is_sequence()) return {};
  return "/" + root.segment();
}

std::vector<std::string> record_labels(const TreeNode& node) {
  std::vector<std::string> out;
  if (node.is_leaf()) return out;
  std::map<std::string_view, std::pair<std::size_t, bool>> groups;  // count, all inner
  for (const auto& child : node.children()) {
    auto [it, inserted] = groups.try_emplace(child.label(), 0, true);
    if (inserted) out.push_back(child.label());
    ++it->second.first;
    it->second.second = it->second.second && child.is_inner();
  }
  std::erase_if(out, [&](const std::string& label) {
    const auto& [count, all_inner] = groups[label];
    return !(all_inner && (count >= 2 || node.is_sequence()));
  });
  return out;
}

bool is_observation_type(const TreeNode& node) { return !record_labels(node).empty(); }

ExtractedTypes extract_types(const TreeNode& root) { return TypeExtractor{}.run(root); }

FlattenedRow flatten_observation(const ObservationRecord& record, ColumnMode mode) {
  FlattenedRow row;
  collect_leaves(record.node, "", mode, row);
  row.cells.emplace_back(std::string(kPathColumn), record.path);
  return row;
}

std::string common_ancestor_path(const std::vector<std::string>& paths) {
  if (paths.empty()) return "/";
  auto split = [](const std::string& path) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(path);
    while (std::getline(in, part, '/')) {
      if (!part.empty()) parts.push_back(part);
    }
    return parts;
  };
  auto common = split(paths.front());
  for (std::size_t i = 1; i < paths.size() && !common.empty(); ++i) {
    const auto parts = split(paths[i]);
    std::size_t n = 0;
    while (n < common.size() && n < parts.size() && common[n] == parts[n]) ++n;
    common.resize(n);
  }
  std::string out;
  for (const auto& part : common) out += "/" + part;
  return out.empty() ? "/" : out;
}

TableSet map_tree(const TreeNode& root, ColumnMode mode) {
  auto extracted = extract_types(root);
  TableSet set;

  std::vector<std::string> columns;
  Table::Row cells;
  std::vector<std::string> origins;
  for (const auto& leaf : extracted.metadata) {
    columns.push_back(mode == ColumnMode::Short
                          ? leaf.name
                          : (dotted(leaf.origin_path).empty()
                                 ? leaf.name
                                 : dotted(leaf.origin_path) + "." + leaf.name));
    cells.push_back(leaf.value);
    origins.push_back(leaf.origin_path);
  }
  if (!extracted.metadata.empty()) {
    columns.emplace_back(kPathColumn);
    cells.emplace_back(common_ancestor_path(origins));
  }
  Table metadata(std::string(kMetadataTable), std::move(columns));
  metadata.add_row(std::move(cells));
  set.put(std::move(metadata));

  for (const auto& type : extracted.types) {
    std::vector<FlattenedRow> rows;
    rows.reserve(type.records.size());
    for (const auto& record : type.records) rows.push_back(flatten_observation(record, mode));
    set.put(table_from_rows(type.name, rows));
  }
  return set;
}

}  // namespace webtabulate
