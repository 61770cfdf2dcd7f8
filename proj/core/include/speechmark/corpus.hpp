#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace speechmark {

/// Coarse universal part-of-speech tags. Adapters map tagger output onto this set.
enum class PosTag { Noun, Verb, Adj, Adv, Pron, Det, Adp, Conj, Num, Part, Intj, Punct, X };

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view text);

/// Diagnostic classes carried by labeled recordings.
enum class ClassLabel { Control, Anomic, Broca, Wernicke, Other };

std::string_view to_string(ClassLabel label);
std::optional<ClassLabel> parse_class_label(std::string_view text);

/// One literal ASR token with its time span in seconds.
struct TimedToken {
  std::string text;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const TimedToken&) const = default;
};

/// Literal (CTC-style) transcript. Silence is implicit in the gaps between tokens.
struct AcousticTranscript {
  std::vector<TimedToken> tokens;
  double total_duration = 0.0;

  bool operator==(const AcousticTranscript&) const = default;
};

struct CleanWord {
  std::string text;
  std::size_t sentence_index = 0;
  std::optional<PosTag> pos;
  std::optional<std::string> lemma;
  std::optional<std::vector<std::string>> phonemes;
  /// Optional per-word embedding used for word vector coherence.
  std::optional<std::vector<double>> vector;

  bool operator==(const CleanWord&) const = default;
};

/// Externally computed model scores attached to a clean transcript.
struct ExternalScores {
  std::optional<double> gpt2_perplexity;
  std::optional<double> ctrleval;
  std::optional<double> word_vector_coherence;
  /// One acceptability probability per sentence of the recording.
  std::optional<std::vector<double>> grammar_acceptance;

  bool operator==(const ExternalScores&) const = default;
};

/// Registered external score keys accepted in recording files.
const std::vector<std::string>& external_score_keys();

/// Punctuated, sentence-segmented transcript.
struct CleanTranscript {
  std::vector<CleanWord> words;
  std::size_t sentence_count = 0;
  ExternalScores external_scores;

  bool operator==(const CleanTranscript&) const = default;
};

struct Recording {
  std::string recording_id;
  std::string subject_id;
  AcousticTranscript acoustic;
  CleanTranscript clean;
  std::optional<ClassLabel> label;
  std::optional<double> aq;

  bool operator==(const Recording&) const = default;
};

/// Parses and validates a recording document. Every error message names
/// the offending field. Text is NFC-normalized.
Recording recording_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Recording& recording);

/// Checks all data-model invariants; throws DataError naming the first violation.
void validate(const Recording& recording);

Recording load_recording(const std::filesystem::path& path);
void save_recording(const Recording& recording, const std::filesystem::path& path);

/// Loads every `*.json` file in `dir`, sorted by recording_id. Rejects empty
/// directories and duplicate ids; per-file errors are aggregated.
std::vector<Recording> load_dataset(const std::filesystem::path& dir);

}  // namespace speechmark
