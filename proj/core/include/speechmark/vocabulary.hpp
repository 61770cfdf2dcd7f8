#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace speechmark {

inline constexpr int kVocabularyVersion = 1;

enum class ScoreCategory { Fluency, LexicalRichness, Syntax, Pronunciation, Coherence };

inline constexpr ScoreCategory kAllCategories[] = {
    ScoreCategory::Fluency, ScoreCategory::LexicalRichness, ScoreCategory::Syntax,
    ScoreCategory::Pronunciation, ScoreCategory::Coherence};

std::string_view to_string(ScoreCategory category);
/// Human-readable name used in report tables ("Lexical Richness").
std::string_view display_name(ScoreCategory category);
std::optional<ScoreCategory> parse_category(std::string_view text);

/// Ordered score-name vocabulary. The pause-quantile and MATTR-window names
/// are derived from the configured quantiles and window sizes; the defaults
/// give the canonical version-1 layout.
class ScoreVocabulary {
 public:
  ScoreVocabulary();
  ScoreVocabulary(std::span<const int> mattr_windows, std::span<const int> quantiles);

  int version() const { return kVocabularyVersion; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool contains(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  ScoreCategory category_of(std::string_view name) const;
  std::vector<std::string> names_in(ScoreCategory category) const;

  const std::vector<int>& mattr_windows() const { return mattr_windows_; }
  const std::vector<int>& quantiles() const { return quantiles_; }

  bool operator==(const ScoreVocabulary& other) const { return names_ == other.names_; }

 private:
  std::vector<int> mattr_windows_;
  std::vector<int> quantiles_;
  std::vector<std::string> names_;
  std::vector<ScoreCategory> categories_;
};

inline constexpr int kDefaultMattrWindows[] = {10, 25, 50};
inline constexpr int kDefaultQuantiles[] = {10, 25, 50, 75, 95};

std::string pause_length_name(int quantile);
std::string pause_distance_name(int quantile);
std::string mattr_name(int window);

}  // namespace speechmark
