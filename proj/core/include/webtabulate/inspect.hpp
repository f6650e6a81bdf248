#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webtabulate/table.hpp"
#include "webtabulate/tree.hpp"

namespace webtabulate {

struct TableSummary {
  std::string name;
  std::size_t variable_count = 0;
  std::vector<std::string> variables;
};

struct StructureReport {
  std::vector<TableSummary> tables;
};

StructureReport summarize(const TableSet& set);

/// Text layout of the report: header, counts block and variables block.
/// Variable lists are filled to `width` columns.
std::string render_summary(const StructureReport& report, std::size_t width = 70);

struct LayoutNode {
  std::size_t id = 0;
  std::string label;
  int depth = 0;
  double x = 0.0;
  double y = 0.0;
  /// 0-based index among all children of the parent; 0 for the root.
  std::size_t sibling_index = 0;
};

struct LayoutEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
};

/// Node ids are pre-order indices; nodes[i].id == i.
struct TreeLayout {
  std::vector<LayoutNode> nodes;
  std::vector<LayoutEdge> edges;
};

inline constexpr double kJitter = 0.15;

/// Tidy (Reingold-Tilford) layout: subtrees are packed left to right with at
/// least one unit between nodes on the same level, every parent sits at the
/// midpoint of its leftmost and rightmost child, the leftmost node is at
/// x = 0 and y equals depth. With `jitter`, each non-root node's y is offset
/// by +kJitter for even sibling indices and -kJitter for odd ones.
TreeLayout layout_tree(const TreeNode& root, bool jitter = false);

enum class RenderFormat { Svg, Dot };

/// Throws Errc::UnsupportedFormat for anything but "svg" or "dot".
RenderFormat parse_render_format(std::string_view name);

struct RenderOptions {
  /// Pixels per layout unit.
  double unit = 80.0;
  double margin = 40.0;
};

/// SVG 1.1 with one <line> per edge and one <text> per node, or a DOT
/// digraph with pinned node positions.
std::string render_tree(const TreeLayout& layout, RenderFormat format,
                        const RenderOptions& options = {});

}  // namespace webtabulate
