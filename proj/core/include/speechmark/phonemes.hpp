#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "speechmark/corpus.hpp"

namespace speechmark {

/// Dictionary phonemizer with a letters-as-phonemes fallback for
/// out-of-vocabulary words.
class Phonemizer {
 public:
  /// Uses the lexicon compiled into the library.
  Phonemizer();
  /// Parses a CMU-style lexicon: `word PH1 PH2 ...` per line, `;;;` comments.
  static Phonemizer from_text(std::string_view text);
  static Phonemizer from_file(const std::filesystem::path& path);

  /// Phonemes for a standardized word.
  std::vector<std::string> phonemize(std::string_view standardized_word) const;
  /// Adapter-supplied phonemes win over the dictionary.
  std::size_t phoneme_count(const CleanWord& word) const;

  bool contains(std::string_view standardized_word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Empty {};
  explicit Phonemizer(Empty) {}

  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

}  // namespace speechmark
