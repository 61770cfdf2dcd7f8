#include "speechmark/vocabulary.hpp"

#include <algorithm>
#include <stdexcept>

namespace speechmark {

std::string_view to_string(ScoreCategory category) {
  switch (category) {
    case ScoreCategory::Fluency: return "fluency";
    case ScoreCategory::LexicalRichness: return "lexical_richness";
    case ScoreCategory::Syntax: return "syntax";
    case ScoreCategory::Pronunciation: return "pronunciation";
    case ScoreCategory::Coherence: return "coherence";
  }
  return "fluency";
}

std::string_view display_name(ScoreCategory category) {
  switch (category) {
    case ScoreCategory::Fluency: return "Fluency";
    case ScoreCategory::LexicalRichness: return "Lexical Richness";
    case ScoreCategory::Syntax: return "Syntax";
    case ScoreCategory::Pronunciation: return "Pronunciation";
    case ScoreCategory::Coherence: return "Coherence";
  }
  return "Fluency";
}

std::optional<ScoreCategory> parse_category(std::string_view text) {
  for (const auto c : kAllCategories) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::string pause_length_name(int quantile) { return "pause_length_q" + std::to_string(quantile); }
std::string pause_distance_name(int quantile) { return "pause_distance_q" + std::to_string(quantile); }
std::string mattr_name(int window) { return "mattr_" + std::to_string(window); }

ScoreVocabulary::ScoreVocabulary() : ScoreVocabulary(kDefaultMattrWindows, kDefaultQuantiles) {}

ScoreVocabulary::ScoreVocabulary(std::span<const int> mattr_windows, std::span<const int> quantiles)
    : mattr_windows_(mattr_windows.begin(), mattr_windows.end()), quantiles_(quantiles.begin(), quantiles.end()) {
  auto add = [this](std::string name, ScoreCategory category) {
    names_.push_back(std::move(name));
    categories_.push_back(category);
  };
  using C = ScoreCategory;
  add("words_per_second", C::Fluency);
  add("phonemes_per_second", C::Fluency);
  add("percentage_time_spoken", C::Fluency);
  add("productive_time_ratio", C::Fluency);
  for (const int q : quantiles_) add(pause_length_name(q), C::Fluency);
  for (const int q : quantiles_) add(pause_distance_name(q), C::Fluency);
  add("pause_per_word", C::Fluency);
  add("mean_phoneme_length_nouns", C::Fluency);

  add("ttr", C::LexicalRichness);
  for (const int w : mattr_windows_) add(mattr_name(w), C::LexicalRichness);
  add("gzip_ratio", C::LexicalRichness);
  add("hdd", C::LexicalRichness);
  add("mtld", C::LexicalRichness);
  add("word_information", C::LexicalRichness);

  add("noun_ratio", C::Syntax);
  add("verb_ratio", C::Syntax);
  add("adjective_ratio", C::Syntax);
  add("grammar_acceptance", C::Syntax);
  add("mean_sentence_length", C::Syntax);

  add("wer_acoustic", C::Pronunciation);
  add("cer_acoustic", C::Pronunciation);

  add("ctrleval", C::Coherence);
  add("word_vector_coherence", C::Coherence);
  add("gpt2_perplexity", C::Coherence);

  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate score names: MATTR windows and quantiles must be distinct");
  }
}

bool ScoreVocabulary::contains(std::string_view name) const { return index_of(name).has_value(); }

std::optional<std::size_t> ScoreVocabulary::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

ScoreCategory ScoreVocabulary::category_of(std::string_view name) const {
  const auto idx = index_of(name);
  if (!idx) throw std::out_of_range("unknown score name: " + std::string(name));
  return categories_[*idx];
}

std::vector<std::string> ScoreVocabulary::names_in(ScoreCategory category) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (categories_[i] == category) out.push_back(names_[i]);
  }
  return out;
}

}  // namespace speechmark
