#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/mapper.hpp"

using namespace webtabulate;

static void BM_ParseJson(benchmark::State& state) {
  const std::string doc = bench::record_document(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(parse_json(doc));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * doc.size()));
}
BENCHMARK(BM_ParseJson)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_MapTree(benchmark::State& state) {
  const TreeNode tree = parse_json(bench::record_document(static_cast<int>(state.range(0)), 10));
  for (auto _ : state) benchmark::DoNotOptimize(map_tree(tree));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MapTree)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_MapTreeFullNames(benchmark::State& state) {
  const TreeNode tree = parse_json(bench::record_document(static_cast<int>(state.range(0)), 10));
  for (auto _ : state) benchmark::DoNotOptimize(map_tree(tree, ColumnMode::Full));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MapTreeFullNames)->Arg(1000);
