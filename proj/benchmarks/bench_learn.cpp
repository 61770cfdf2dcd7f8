#include <filesystem>
#include <fstream>

#include <benchmark/benchmark.h>

#include "speechmark/learn.hpp"
#include "speechmark/tables.hpp"
#include "speechmark/vocabulary.hpp"

namespace sm = speechmark;

namespace {

sm::FeatureTable golden_features() {
  std::ifstream in(std::filesystem::path(SPEECHMARK_FIXTURES_DIR) / "golden" / "features.csv");
  return sm::read_features_csv(in);
}

void BM_Loso(benchmark::State& state) {
  const auto table = golden_features();
  const auto task = static_cast<sm::Task>(state.range(0));
  const auto data = sm::make_dataset(table.rows, table.names, task);
  const sm::LosoOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(sm::loso(data, options));
}
BENCHMARK(BM_Loso)
    ->Arg(static_cast<int>(sm::Task::Binary))
    ->Arg(static_cast<int>(sm::Task::Subtype))
    ->Arg(static_cast<int>(sm::Task::Aq))
    ->Unit(benchmark::kMillisecond);

void BM_Ablation(benchmark::State& state) {
  const auto table = golden_features();
  const auto data = sm::make_dataset(table.rows, table.names, sm::Task::Subtype);
  const sm::ScoreVocabulary vocabulary;
  const sm::LosoOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(sm::ablation_by_category(data, vocabulary, options));
}
BENCHMARK(BM_Ablation)->Unit(benchmark::kMillisecond);

}  // namespace
