#include "webtabulate/tree.hpp"

#include <map>
#include <utility>

namespace webtabulate {

std::string_view to_string(MimeKind kind) noexcept {
  switch (kind) {
    case MimeKind::JSON: return "JSON";
    case MimeKind::XML: return "XML";
    case MimeKind::RSS: return "RSS";
    case MimeKind::YAML: return "YAML";
    case MimeKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

TreeNode TreeNode::leaf(std::string label, Cell value) {
  TreeNode node;
  node.label_ = std::move(label);
  node.kind_ = NodeKind::Leaf;
  node.value_ = std::move(value);
  return node;
}

TreeNode TreeNode::inner(std::string label, std::vector<TreeNode> children, bool sequence) {
  TreeNode node;
  node.label_ = std::move(label);
  node.kind_ = NodeKind::Inner;
  node.sequence_ = sequence;

  std::map<std::string_view, std::size_t> totals;
  for (const auto& child : children) ++totals[child.label_];
  std::map<std::string_view, std::size_t> seen;
  for (auto& child : children) {
    child.position_ = ++seen[child.label_];
    child.indexed_ = sequence || totals[child.label_] > 1;
  }
  node.children_ = std::move(children);
  return node;
}

std::string TreeNode::segment() const {
  if (!indexed_) return label_;
  return label_ + "[" + std::to_string(position_) + "]";
}

TreeNode TreeNode::with_children(std::vector<TreeNode> kept) const {
  TreeNode node;
  node.label_ = label_;
  node.kind_ = kind_;
  node.value_ = value_;
  node.sequence_ = sequence_;
  node.position_ = position_;
  node.indexed_ = indexed_;
  node.children_ = std::move(kept);
  return node;
}

std::size_t TreeNode::node_count() const noexcept {
  std::size_t n = 1;
  for (const auto& child : children_) n += child.node_count();
  return n;
}

bool operator==(const TreeNode& a, const TreeNode& b) {
  return a.label_ == b.label_ && a.kind_ == b.kind_ && a.value_ == b.value_ &&
         a.sequence_ == b.sequence_ && a.position_ == b.position_ &&
         a.indexed_ == b.indexed_ && a.children_ == b.children_;
}

namespace {

void append_outline(const TreeNode& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += node.segment().empty() ? "(root)" : node.segment();
  if (node.is_leaf()) {
    out += " = ";
    out += node.value() ? "\"" + *node.value() + "\"" : "<NA>";
  } else if (node.is_sequence()) {
    out += " []";
  }
  out += '\n';
  for (const auto& child : node.children()) append_outline(child, depth + 1, out);
}

}  // namespace

std::string debug_string(const TreeNode& root) {
  std::string out;
  append_outline(root, 0, out);
  return out;
}

std::string join_path(std::string_view parent, std::string_view segment) {
  std::string out(parent);
  if (segment.empty()) return out;
  out += '/';
  out += segment;
  return out;
}

}  // namespace webtabulate
