#include "speechmark/phonemes.hpp"

#include <fstream>
#include <sstream>

#include "speechmark/error.hpp"
#include "speechmark/text.hpp"

namespace speechmark {

namespace detail {
extern const std::string_view kBundledLexicon;
}

Phonemizer::Phonemizer() { *this = from_text(detail::kBundledLexicon); }

Phonemizer Phonemizer::from_text(std::string_view text) {
  Phonemizer p{Empty{}};
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.starts_with(";;;")) continue;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    std::vector<std::string> phones;
    for (std::string ph; fields >> ph;) phones.push_back(std::move(ph));
    if (phones.empty()) continue;
    p.entries_.emplace(standardize(word), std::move(phones));
  }
  return p;
}

Phonemizer Phonemizer::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

std::vector<std::string> Phonemizer::phonemize(std::string_view standardized_word) const {
  if (auto it = entries_.find(std::string(standardized_word)); it != entries_.end()) return it->second;
  // Letters-as-phonemes fallback.
  std::vector<std::string> out;
  for (const char32_t c : to_code_points(standardized_word)) {
    if (c == U' ') continue;
    out.push_back(from_code_points(std::u32string(1, c)));
  }
  return out;
}

std::size_t Phonemizer::phoneme_count(const CleanWord& word) const {
  if (word.phonemes) return word.phonemes->size();
  return phonemize(standardize(word.text)).size();
}

bool Phonemizer::contains(std::string_view standardized_word) const {
  return entries_.contains(std::string(standardized_word));
}

}  // namespace speechmark
