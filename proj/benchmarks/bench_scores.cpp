#include <filesystem>

#include <benchmark/benchmark.h>

#include "speechmark/config.hpp"
#include "speechmark/corpus.hpp"
#include "speechmark/pipeline.hpp"

namespace sm = speechmark;

namespace {

const std::filesystem::path kFixtures = SPEECHMARK_FIXTURES_DIR;

void BM_ScoreChunk(benchmark::State& state) {
  const sm::PipelineConfig config;
  const auto rec = sm::load_recording(kFixtures / "reference" / "healthy_001.json");
  const auto aligned = sm::align(rec.acoustic, rec.clean);
  const auto chunks = sm::chunk(rec, aligned, sm::make_chunk_options(config));
  const auto context = sm::make_score_context(config);
  for (auto _ : state) benchmark::DoNotOptimize(sm::score_chunk(chunks.chunks.at(0), rec, aligned, context));
}
BENCHMARK(BM_ScoreChunk)->Unit(benchmark::kMicrosecond);

void BM_ScoreDataset(benchmark::State& state) {
  const sm::PipelineConfig config;
  const auto recordings = sm::load_dataset(kFixtures / "corpus");
  const auto context = sm::make_score_context(config);
  const auto options = sm::make_chunk_options(config);
  sm::EventLog log;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sm::score_dataset(recordings, context, options, static_cast<std::size_t>(state.range(0)), log));
  }
}
BENCHMARK(BM_ScoreDataset)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
