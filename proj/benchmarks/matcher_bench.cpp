#include <benchmark/benchmark.h>

#include "alignkit/align_score.hpp"

using namespace alignkit;

namespace {

// n instances of one category in a row, each left of the next, detected in
// reverse confidence order so the search has to backtrack.
struct Case {
  StructuredScene scene;
  DetectionSet dets;
};

Case same_category_row(int n, int extra) {
  std::vector<InstanceSpec> instances;
  std::vector<RelationSpec> relations;
  for (int i = 1; i <= n; ++i) {
    instances.push_back({"cup", i, kPalette[static_cast<std::size_t>(i % 7)]});
    if (i > 1) relations.push_back({{"cup", i - 1}, {"cup", i}, RelationKind::Left});
  }
  Case c{StructuredScene(std::move(instances), std::move(relations)), {}};
  for (int i = 0; i < n + extra; ++i) {
    DetectedInstance d;
    d.category = "cup";
    d.confidence = 0.9 - 0.01 * i;
    d.box = {100.0 * (n + extra - i), 50.0, 20.0, 20.0};
    d.color_scores.fill(0.0);
    d.color_scores[static_cast<std::size_t>(i % 7)] = 1.0;
    d.color = classify_color(d.color_scores);
    c.dets.instances.push_back(d);
  }
  return c;
}

void BM_BestMatching(benchmark::State& state) {
  const auto c = same_category_row(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto relations = extract_relations(c.dets);
  for (auto _ : state) benchmark::DoNotOptimize(best_matching(c.scene, c.dets, relations));
}
BENCHMARK(BM_BestMatching)->Args({3, 0})->Args({5, 0})->Args({5, 3})->Args({7, 2});

void BM_Evaluate(benchmark::State& state) {
  const auto c = same_category_row(5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(c.scene, c.dets));
}
BENCHMARK(BM_Evaluate);

}  // namespace
