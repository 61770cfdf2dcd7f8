#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speechmark/align.hpp"
#include "speechmark/annotate.hpp"
#include "speechmark/corpus.hpp"
#include "speechmark/phonemes.hpp"
#include "speechmark/vocabulary.hpp"

namespace speechmark {

/// Named scores for one chunk or one recording. A name is either in
/// `values` or in `missing`, never both.
struct ScoreVector {
  std::map<std::string, double> values;
  std::set<std::string> missing;

  void set(const std::string& name, double value);
  void set(const std::string& name, std::optional<double> value);
  void mark_missing(const std::string& name);
  std::optional<double> get(const std::string& name) const;
  bool has(const std::string& name) const { return values.contains(name); }
  /// Adds `other`'s entries; names must not overlap.
  void merge(const ScoreVector& other);

  bool operator==(const ScoreVector&) const = default;
};

nlohmann::json to_json(const ScoreVector& scores);
ScoreVector score_vector_from_json(const nlohmann::json& doc);

/// Shared, read-only inputs for scoring.
struct ScoreContext {
  ScoreVocabulary vocabulary;
  Phonemizer phonemizer;
};

ScoreVector fluency_scores(const Chunk& chunk, const Recording& recording,
                           const AlignedTranscript& aligned, const ScoreContext& context);
ScoreVector lexical_scores(const Chunk& chunk, const Recording& recording,
                           const ScoreContext& context);
ScoreVector syntax_scores(const Chunk& chunk, const Recording& recording);
ScoreVector pronunciation_scores(const Chunk& chunk, const Recording& recording,
                                 const AlignedTranscript& aligned);
ScoreVector coherence_scores(const Chunk& chunk, const Recording& recording);

/// Union of the five families; every vocabulary name ends up either
/// valued or missing.
ScoreVector score_chunk(const Chunk& chunk, const Recording& recording,
                        const AlignedTranscript& aligned, const ScoreContext& context);

/// Per-score mean over the vectors where the score is present. Throws
/// std::invalid_argument on empty input.
ScoreVector average_scores(std::span<const ScoreVector> chunks);

}  // namespace speechmark
