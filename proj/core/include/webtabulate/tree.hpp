#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace webtabulate {

/// A scalar value or the distinguished null marker (std::nullopt).
using Cell = std::optional<std::string>;

enum class NodeKind { Inner, Leaf };

enum class MimeKind { JSON, XML, RSS, YAML, Unknown };

std::string_view to_string(MimeKind kind) noexcept;

/// Unified tree for any parsed web document.
///
/// Nodes are built bottom-up through the factories; `inner()` assigns each
/// child its 1-based position among siblings sharing its label and marks it
/// `indexed()` when that label occurs more than once or the parent is a
/// sequence. Once built a tree is never mutated.
class TreeNode {
 public:
  static TreeNode leaf(std::string label, Cell value);
  static TreeNode inner(std::string label, std::vector<TreeNode> children,
                        bool sequence = false);

  const std::string& label() const noexcept { return label_; }
  NodeKind kind() const noexcept { return kind_; }
  bool is_leaf() const noexcept { return kind_ == NodeKind::Leaf; }
  bool is_inner() const noexcept { return kind_ == NodeKind::Inner; }

  /// Leaf payload; nullopt on a Leaf is the null marker. Always nullopt on Inner nodes.
  const Cell& value() const noexcept { return value_; }
  const std::vector<TreeNode>& children() const noexcept { return children_; }

  /// Inner node built from an array: every child carries this node's label.
  bool is_sequence() const noexcept { return sequence_; }
  std::size_t position() const noexcept { return position_; }
  bool indexed() const noexcept { return indexed_; }

  /// Path segment for this node: `label` or `label[position]` when indexed.
  std::string segment() const;

  /// Copy of this Inner node holding `kept` children. Child positions and
  /// indexing are preserved from the original tree.
  TreeNode with_children(std::vector<TreeNode> kept) const;

  std::size_t node_count() const noexcept;

  friend bool operator==(const TreeNode& a, const TreeNode& b);

 private:
  TreeNode() = default;

  std::string label_;
  NodeKind kind_ = NodeKind::Leaf;
  Cell value_;
  std::vector<TreeNode> children_;
  bool sequence_ = false;
  std::size_t position_ = 1;
  bool indexed_ = false;
};

/// Indented outline, one node per line; used by tests and `--verbose` dumps.
std::string debug_string(const TreeNode& root);

/// Joins a parent path and a child segment. Sequence containers add no
/// segment of their own; their elements carry the container label.
std::string join_path(std::string_view parent, std::string_view segment);

}  // namespace webtabulate
