#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "speechmark/annotate.hpp"
#include "speechmark/config.hpp"
#include "speechmark/corpus.hpp"
#include "speechmark/log.hpp"
#include "speechmark/prototype.hpp"
#include "speechmark/scores.hpp"
#include "speechmark/tables.hpp"

namespace speechmark {

/// A stage failure carrying the stage name and, when known, the recording.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::string recording_id, const std::string& what);

  const std::string& stage() const { return stage_; }
  const std::string& recording_id() const { return recording_id_; }
  /// True when the underlying cause was bad input data.
  bool data_error() const { return data_error_; }
  void set_data_error(bool value) { data_error_ = value; }

 private:
  std::string stage_;
  std::string recording_id_;
  bool data_error_ = true;
};

ScoreContext make_score_context(const PipelineConfig& config);
ChunkOptions make_chunk_options(const PipelineConfig& config);

/// Align, chunk and score one recording. `chunks == 0` marks a skipped
/// recording.
RecordingScores score_recording(const Recording& recording, const ScoreContext& context,
                                const ChunkOptions& options);

/// Scores recordings on `jobs` workers; output order follows the input.
/// Skipped recordings are logged and left out.
std::vector<RecordingScores> score_dataset(std::span<const Recording> recordings,
                                           const ScoreContext& context,
                                           const ChunkOptions& options, std::size_t jobs,
                                           EventLog& log);

/// Fits the prototype on chunk-level score vectors of healthy recordings.
Prototype fit_prototypes(std::span<const RecordingScores> healthy, const ScoreVocabulary& vocabulary);

std::vector<FeatureVector> featurize(std::span<const RecordingScores> scores,
                                     const Prototype& proto, const ScoreVocabulary& vocabulary);

struct RunArtifacts {
  std::filesystem::path prototype_json;
  std::filesystem::path scores_csv;
  std::filesystem::path features_csv;
  std::filesystem::path report_json;
  std::filesystem::path ablation_json;
  std::filesystem::path report_markdown;
};

/// Full run: score the healthy corpus, fit prototypes, score and featurize
/// the dataset, evaluate with LOSO. Writes every artifact under
/// `config.out_dir`; on failure the artifacts written so far are removed and
/// a StageError is thrown.
RunArtifacts run_pipeline(const PipelineConfig& config, EventLog& log);

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace speechmark
