#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speechmark/corpus.hpp"
#include "speechmark/prototype.hpp"
#include "speechmark/scores.hpp"
#include "speechmark/vocabulary.hpp"

namespace speechmark {

/// Averaged scores of one recording plus its chunk-level vectors.
struct RecordingScores {
  std::string recording_id;
  std::string subject_id;
  std::optional<ClassLabel> label;
  std::optional<double> aq;
  std::size_t chunks = 0;
  ScoreVector scores;
  std::vector<ScoreVector> chunk_scores;
};

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// One row per recording: identity columns, one column per score (empty when
/// missing) and one `missing_<name>` 0/1 column per score.
void write_scores_csv(std::ostream& out, std::span<const RecordingScores> rows,
                      const ScoreVocabulary& vocabulary);
std::vector<RecordingScores> read_scores_csv(std::istream& in, const ScoreVocabulary& vocabulary);

void write_features_csv(std::ostream& out, std::span<const FeatureVector> rows,
                        std::span<const std::string> names);

struct FeatureTable {
  std::vector<std::string> names;
  std::vector<FeatureVector> rows;
};
FeatureTable read_features_csv(std::istream& in);

/// Splits one CSV record (RFC 4180 quoting).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace speechmark
