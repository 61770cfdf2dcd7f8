// Regenerates tests/fixtures/golden from the bundled corpora.
// Usage: freeze_golden FIXTURES_DIR
#include <filesystem>
#include <iostream>

#include "speechmark/align.hpp"
#include "speechmark/annotate.hpp"
#include "speechmark/pipeline.hpp"

namespace fs = std::filesystem;
namespace sm = speechmark;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: freeze_golden FIXTURES_DIR\n";
    return 2;
  }
  const fs::path fixtures = argv[1];
  const fs::path golden = fixtures / "golden";
  fs::create_directories(golden);

  sm::PipelineConfig config;
  config.healthy_dir = fixtures / "reference";
  config.dataset_dir = fixtures / "corpus";
  config.out_dir = golden;
  sm::EventLog log;
  sm::run_pipeline(config, log);

  const auto rec = sm::load_recording(config.healthy_dir / "healthy_001.json");
  const auto context = sm::make_score_context(config);
  const auto aligned = sm::align(rec.acoustic, rec.clean);
  const auto chunks = sm::chunk(rec, aligned, sm::make_chunk_options(config));
  const auto scores = sm::score_chunk(chunks.chunks.at(0), rec, aligned, context);
  sm::write_file_atomic(golden / "healthy_001_chunk0.json", sm::to_json(scores).dump(2) + "\n");
  std::cout << "golden files written to " << golden.string() << '\n';
  return 0;
}
