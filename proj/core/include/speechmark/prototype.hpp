#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "speechmark/corpus.hpp"
#include "speechmark/scores.hpp"
#include "speechmark/vocabulary.hpp"

namespace speechmark {

/// Value assigned when sigma is zero and the score differs from mu.
inline constexpr double kDegenerateFeatureFloor = 1e-6;

/// Gaussian summary of one score over the healthy reference corpus.
struct ScoreGaussian {
  std::optional<double> mu;
  std::optional<double> sigma;
  std::size_t n = 0;

  bool fitted() const { return mu.has_value() && sigma.has_value(); }
  bool operator==(const ScoreGaussian&) const = default;
};

/// Per-score healthy-speech prototype. Every vocabulary name has an entry;
/// names seen fewer than twice stay unfitted.
struct Prototype {
  int vocabulary_version = kVocabularyVersion;
  std::vector<std::string> names;
  std::map<std::string, ScoreGaussian> scores;

  std::size_t fitted_count() const;
  bool operator==(const Prototype&) const = default;
};

/// Sample mean and n-1 standard deviation per score. Throws DataError on an
/// empty corpus.
Prototype fit_prototype(std::span<const ScoreVector> healthy, const ScoreVocabulary& vocabulary);

/// Distance feature for one score: sigma / |s - mu| outside one sigma,
/// 1 inside it. Missing scores and unfitted prototypes give 1.
double distance_feature(std::optional<double> score, const ScoreGaussian& gaussian);

/// Prototype-distance features for a recording, values in (0, 1].
struct FeatureVector {
  std::string recording_id;
  std::string subject_id;
  std::optional<ClassLabel> label;
  std::optional<double> aq;
  std::map<std::string, double> values;

  bool operator==(const FeatureVector&) const = default;
};

/// Throws DataError when the vocabulary of `proto` differs from `vocabulary`.
std::map<std::string, double> transform(const ScoreVector& scores, const Prototype& proto,
                                        const ScoreVocabulary& vocabulary);

nlohmann::json to_json(const Prototype& proto);
Prototype prototype_from_json(const nlohmann::json& doc);
void save_prototype(const Prototype& proto, const std::filesystem::path& path);
Prototype load_prototype(const std::filesystem::path& path);

}  // namespace speechmark
