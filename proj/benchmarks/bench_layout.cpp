#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "webtabulate/inspect.hpp"

using namespace webtabulate;

namespace {

// Complete tree with the given branching factor and depth.
TreeNode complete_tree(int branching, int depth) {
  if (depth == 0) return TreeNode::leaf("leaf", "v");
  std::vector<TreeNode> children;
  for (int i = 0; i < branching; ++i) children.push_back(complete_tree(branching, depth - 1));
  return TreeNode::inner("node", std::move(children));
}

}  // namespace

static void BM_LayoutComplete(benchmark::State& state) {
  const TreeNode tree = complete_tree(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(layout_tree(tree));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(tree.node_count()));
}
BENCHMARK(BM_LayoutComplete)->Args({2, 9})->Args({4, 5})->Args({10, 3});

static void BM_RenderSvg(benchmark::State& state) {
  const TreeLayout layout = layout_tree(complete_tree(4, 5));
  for (auto _ : state) benchmark::DoNotOptimize(render_tree(layout, RenderFormat::Svg));
}
BENCHMARK(BM_RenderSvg);
