#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "speechmark/align.hpp"
#include "speechmark/corpus.hpp"

namespace speechmark {

inline constexpr double kDefaultPauseThreshold = 0.300;
inline constexpr std::size_t kDefaultMinChunkWords = 200;

/// Timings are compared at microsecond resolution so that decimal second
/// values such as 0.8 - 0.5 compare exactly against a 0.3 s threshold.
std::int64_t to_microseconds(double seconds);

struct Pause {
  double start = 0.0;
  double end = 0.0;
  /// Last timed clean word ending at or before the pause start.
  std::optional<std::size_t> preceding_clean_word;

  double duration() const { return end - start; }
  bool operator==(const Pause&) const = default;
};

/// Half-open index range.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  bool operator==(const IndexRange&) const = default;
};

struct Chunk {
  std::string recording_id;
  std::size_t chunk_index = 0;
  IndexRange clean_words;
  IndexRange acoustic_tokens;
  std::vector<Pause> pauses;
  std::vector<std::size_t> filler_acoustic_indices;
  /// First transferred start to last transferred end among the chunk's words;
  /// unset when no word in the chunk carries a timing.
  std::optional<double> span_start;
  std::optional<double> span_end;

  double duration() const { return span_start && span_end ? *span_end - *span_start : 0.0; }
};

/// Every inter-token gap (plus the leading and trailing silence) strictly
/// longer than `threshold` seconds, in time order.
std::vector<Pause> detect_pauses(const AcousticTranscript& acoustic, double threshold);

/// Acoustic tokens left unmatched by the alignment.
std::vector<std::size_t> detect_fillers(const AlignedTranscript& aligned,
                                        const AcousticTranscript& acoustic);

struct ChunkOptions {
  std::size_t min_words = kDefaultMinChunkWords;
  double pause_threshold = kDefaultPauseThreshold;
};

struct ChunkingResult {
  std::vector<Chunk> chunks;
  /// Words left over after the last full chunk (dropped, not merged).
  std::size_t dropped_words = 0;

  bool skipped() const { return chunks.empty(); }
};

/// Greedy sentence-aligned segmentation: sentences are accumulated until the
/// running word count reaches `min_words`, closing the chunk at that sentence
/// end. A trailing remainder shorter than `min_words` is dropped.
ChunkingResult chunk(const Recording& recording, const AlignedTranscript& aligned,
                     const ChunkOptions& options = {});

}  // namespace speechmark
