#include <benchmark/benchmark.h>

#include "case_studies.hpp"
#include "corpus.hpp"
#include "semsnap/document.hpp"
#include "semsnap/operations.hpp"
#include "semsnap/relations.hpp"

using namespace semsnap;

namespace {

const std::vector<Canvas>& corpus() {
  static const std::vector<Canvas> canvases = testing::random_corpus(200, 20231015);
  return canvases;
}

const Canvas& covid() {
  static const Canvas canvas = load_canvas_file(testing::fixture_path("covid.canvas.json"));
  return canvas;
}

void BM_FindRelationsCorpus(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& c : corpus()) benchmark::DoNotOptimize(find_relations(c));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_FindRelationsCorpus)->Unit(benchmark::kMillisecond);

void BM_PlanAllCorpus(benchmark::State& state) {
  std::vector<RelationSet> sets;
  for (const auto& c : corpus()) sets.push_back(find_relations(c));
  for (auto _ : state) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      benchmark::DoNotOptimize(plan_all_operations(corpus()[i], sets[i], EngineConfig{}));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_PlanAllCorpus)->Unit(benchmark::kMillisecond);

void BM_FindRelationsCovid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_relations(covid()));
}
BENCHMARK(BM_FindRelationsCovid)->Unit(benchmark::kMicrosecond);

void BM_PlanAllCovid(benchmark::State& state) {
  const RelationSet set = find_relations(covid());
  for (auto _ : state) benchmark::DoNotOptimize(plan_all_operations(covid(), set, EngineConfig{}));
}
BENCHMARK(BM_PlanAllCovid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
