#include <benchmark/benchmark.h>

#include <map>

#include "lexatom/features.hpp"
#include "lexatom/forest.hpp"
#include "lexatom/pipeline.hpp"
#include "lexatom/smote.hpp"
#include "lexatom/stats.hpp"
#include "support/fixtures.hpp"

using namespace lexatom;

namespace {

const LabeledCorpus& corpus(std::size_t n) {
  static std::map<std::size_t, LabeledCorpus> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, lexatom::testing::first_letter_corpus(n, 0.05, 17, 3, 14)).first;
  }
  return it->second;
}

void BM_FeaturizeCorpus(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  const auto lmax = max_word_length(c);
  for (auto _ : state) benchmark::DoNotOptimize(featurize_corpus(c, lmax));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FeaturizeCorpus)->Arg(2000)->Arg(20000);

void BM_SignificanceTable(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(variable_significance_table(c));
}
BENCHMARK(BM_SignificanceTable)->Arg(2000)->Arg(20000);

void BM_StudentTail(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(student_t_two_tailed(t, 14000.0));
    t = t < 8.0 ? t + 0.01 : 0.1;
  }
}
BENCHMARK(BM_StudentTail);

void BM_TrainForest(benchmark::State& state) {
  const auto inputs = model_inputs(corpus(static_cast<std::size_t>(state.range(0))));
  ForestParams params;
  params.n_trees = 100;
  params.seed = 1;
  params.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train_random_forest(inputs.matrix, inputs.labels, params));
}
BENCHMARK(BM_TrainForest)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Smote(benchmark::State& state) {
  const auto inputs = model_inputs(corpus(2000));
  for (auto _ : state) {
    benchmark::DoNotOptimize(smote_balance(inputs.matrix, inputs.labels, SmoteParams{5, 3, false}));
  }
}
BENCHMARK(BM_Smote)->Unit(benchmark::kMillisecond);

void BM_ScoreWords(benchmark::State& state) {
  const auto& c = corpus(2000);
  const auto inputs = model_inputs(c);
  ForestParams params;
  params.n_trees = 100;
  params.threads = 1;
  const auto model = train_random_forest(inputs.matrix, inputs.labels, params);
  for (auto _ : state) benchmark::DoNotOptimize(score_words(model, c.simple));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.simple.size()));
}
BENCHMARK(BM_ScoreWords)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
