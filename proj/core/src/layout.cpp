#include <algorithm>
#include <limits>

#include "webtabulate/inspect.hpp"

namespace webtabulate {
namespace {

struct Work {
  std::vector<std::vector<std::size_t>> children;
  std::vector<double> offset;  // x relative to the parent
};

void flatten(const TreeNode& node, int depth, std::size_t sibling_index, TreeLayout& layout,
             Work& work) {
  const std::size_t id = layout.nodes.size();
  layout.nodes.push_back({id, node.label().empty() ? "(root)" : node.label(), depth, 0.0,
                          static_cast<double>(depth), sibling_index});
  work.children.emplace_back();
  std::size_t index = 0;
  for (const auto& child : node.children()) {
    const std::size_t child_id = layout.nodes.size();
    work.children[id].push_back(child_id);
    layout.edges.push_back({id, child_id});
    flatten(child, depth + 1, index++, layout, work);
  }
}

// Left and right extent of a subtree per level, relative to its root.
struct Contour {
  std::vector<double> left;
  std::vector<double> right;
};

Contour place(std::size_t id, Work& work) {
  const auto& kids = work.children[id];
  if (kids.empty()) return {{0.0}, {0.0}};

  std::vector<double> acc_left;
  std::vector<double> acc_right;
  std::vector<double> offsets;
  offsets.reserve(kids.size());
  for (std::size_t k = 0; k < kids.size(); ++k) {
    Contour c = place(kids[k], work);
    double shift = 0.0;
    if (k > 0) {
      shift = -std::numeric_limits<double>::infinity();
      const std::size_t overlap = std::min(acc_right.size(), c.left.size());
      for (std::size_t d = 0; d < overlap; ++d) {
        shift = std::max(shift, acc_right[d] - c.left[d] + 1.0);
      }
    }
    offsets.push_back(shift);
    for (std::size_t d = 0; d < c.left.size(); ++d) {
      if (d < acc_right.size()) {
        acc_right[d] = std::max(acc_right[d], shift + c.right[d]);
        acc_left[d] = std::min(acc_left[d], shift + c.left[d]);
      } else {
        acc_right.push_back(shift + c.right[d]);
        acc_left.push_back(shift + c.left[d]);
      }
    }
  }

  const double mid = (offsets.front() + offsets.back()) / 2.0;
  for (std::size_t k = 0; k < kids.size(); ++k) work.offset[kids[k]] = offsets[k] - mid;

  Contour out;
  out.left.reserve(acc_left.size() + 1);
  out.right.reserve(acc_right.size() + 1);
  out.left.push_back(0.0);
  out.right.push_back(0.0);
  for (std::size_t d = 0; d < acc_left.size(); ++d) {
    out.left.push_back(acc_left[d] - mid);
    out.right.push_back(acc_right[d] - mid);
  }
  return out;
}

}  // namespace

TreeLayout layout_tree(const TreeNode& root, bool jitter) {
  TreeLayout layout;
  Work work;
  flatten(root, 0, 0, layout, work);
  work.offset.assign(layout.nodes.size(), 0.0);
  place(0, work);

  // Pre-order ids: every parent precedes its children.
  std::vector<double> x(layout.nodes.size(), 0.0);
  for (const auto& edge : layout.edges) x[edge.child] = x[edge.parent] + work.offset[edge.child];
  const double min_x = *std::min_element(x.begin(), x.end());

  for (auto& node : layout.nodes) {
    node.x = x[node.id] - min_x;
    node.y = static_cast<double>(node.depth);
    if (jitter && node.id != 0) node.y += node.sibling_index % 2 == 0 ? kJitter : -kJitter;
  }
  return layout;
}

}  // namespace webtabulate
