#include <random>

#include <benchmark/benchmark.h>

#include "speechmark/align.hpp"

namespace sm = speechmark;

namespace {

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> word(0, 400);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(word(rng)));
  return out;
}

// Acoustic side is a noisy copy of the clean side.
void BM_EditScript(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto clean = random_tokens(rng, n);
  auto acoustic = clean;
  for (std::size_t i = 0; i < acoustic.size(); i += 9) acoustic[i] = "uh";
  for (auto _ : state) benchmark::DoNotOptimize(sm::edit_script<std::string>(acoustic, clean));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditScript)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

// Forces the checkpointed path by shrinking the full-table limit.
void BM_EditScriptCheckpointed(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto clean = random_tokens(rng, n);
  const auto acoustic = random_tokens(rng, n + n / 10);
  for (auto _ : state) benchmark::DoNotOptimize(sm::edit_script<std::string>(acoustic, clean, 1024));
}
BENCHMARK(BM_EditScriptCheckpointed)->Arg(512)->Arg(2048);

}  // namespace
