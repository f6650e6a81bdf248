#pragma once

#include <string>
#include <utility>
#include <vector>

#include "webtabulate/table.hpp"
#include "webtabulate/tree.hpp"

namespace webtabulate {

/// Column naming: Short uses leaf labels, Full the dotted path below the
/// record root. Full metadata names start at the document root label.
enum class ColumnMode { Short, Full };

inline constexpr std::string_view kPathColumn = "path";

/// One observation: the record subtree with nested observation types
/// removed, plus its position-indexed provenance path.
struct ObservationRecord {
  TreeNode node;
  std::string path;
};

struct ObservationType {
  std::string name;
  std::vector<ObservationRecord> records;
  /// Path of the node holding the first record group.
  std::string origin_path;
};

struct MetadataLeaf {
  /// Leaf segment: label, or label[pos] for repeated leaves.
  std::string name;
  Cell value;
  /// Path of the leaf's parent.
  std::string origin_path;
};

using MetadataLeaves = std::vector<MetadataLeaf>;

struct FlattenedRow {
  std::vector<std::pair<std::string, Cell>> cells;
};

struct ExtractedTypes {
  std::vector<ObservationType> types;
  MetadataLeaves metadata;
};

/// Labels among `node`'s children that form record groups: every child with
/// that label is Inner, and there are at least two of them or `node` is a
/// sequence.
std::vector<std::string> record_labels(const TreeNode& node);

/// True iff `node` holds at least one record group. False for leaves.
bool is_observation_type(const TreeNode& node);

/// Splits a tree into observation types and the leaves that belong to none.
///
/// Record groups are lifted out wherever they occur, including inside other
/// records. Groups found at the same structural path (the provenance path
/// with positions removed) form one type; distinct paths sharing a label are
/// named label, label_2, label_3, ... in document order. Types are listed in
/// document order of their first record.
ExtractedTypes extract_types(const TreeNode& root);

/// Depth-first leaves of a record as (column, cell), then ("path", record.path).
FlattenedRow flatten_observation(const ObservationRecord& record, ColumnMode mode);

/// Metadata first (one row, or no columns if the document has no stray
/// leaves), then one table per observation type.
TableSet map_tree(const TreeNode& root, ColumnMode mode = ColumnMode::Short);

/// Provenance path of the document root ("" for anonymous and sequence roots).
std::string root_path(const TreeNode& root);

/// Longest common ancestor of slash paths; "/" when they share nothing.
std::string common_ancestor_path(const std::vector<std::string>& paths);

}  // namespace webtabulate
