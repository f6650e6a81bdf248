#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/mapper.hpp"
#include "webtabulate/tables_io.hpp"

using namespace webtabulate;

static void BM_WriteCsv(benchmark::State& state) {
  const TableSet set = map_tree(parse_json(bench::record_document(static_cast<int>(state.range(0)), 10)));
  const Table& items = set.at("items");
  std::size_t bytes = 0;
  for (auto _ : state) {
    const std::string csv = to_csv(items);
    bytes += csv.size();
    benchmark::DoNotOptimize(csv.data());
  }
  state.SetBytesProcessed(static_cast<int64_t>(bytes));
}
BENCHMARK(BM_WriteCsv)->Arg(1000)->Arg(10000);

static void BM_WriteJsonLines(benchmark::State& state) {
  const TableSet set = map_tree(parse_json(bench::record_document(static_cast<int>(state.range(0)), 10)));
  const Table& items = set.at("items");
  for (auto _ : state) benchmark::DoNotOptimize(to_jsonlines(items));
}
BENCHMARK(BM_WriteJsonLines)->Arg(1000);

static void BM_MergeTableSets(benchmark::State& state) {
  std::vector<TableSet> parts;
  for (int i = 0; i < state.range(0); ++i) parts.push_back(map_tree(parse_json(bench::record_document(20, 8))));
  for (auto _ : state) benchmark::DoNotOptimize(merge_tablesets(parts));
}
BENCHMARK(BM_MergeTableSets)->Arg(10)->Arg(100);
