#include "speechmark/annotate.hpp"

#include <cmath>
#include <stdexcept>

namespace speechmark {

std::int64_t to_microseconds(double seconds) { return std::llround(seconds * 1e6); }

std::vector<Pause> detect_pauses(const AcousticTranscript& acoustic, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("pause threshold must be positive");
  const std::int64_t threshold_us = to_microseconds(threshold);

  std::vector<Pause> pauses;
  double prev_end = 0.0;
  for (const auto& tok : acoustic.tokens) {
    if (to_microseconds(tok.start) - to_microseconds(prev_end) > threshold_us) {
      pauses.push_back({prev_end, tok.start, std::nullopt});
    }
    prev_end = tok.end;
  }
  if (to_microseconds(acoustic.total_duration) - to_microseconds(prev_end) > threshold_us) {
    pauses.push_back({prev_end, acoustic.total_duration, std::nullopt});
  }
  return pauses;
}

std::vector<std::size_t> detect_fillers(const AlignedTranscript& aligned, const AcousticTranscript&) {
  return aligned.unmatched_acoustic;
}

ChunkingResult chunk(const Recording& recording, const AlignedTranscript& aligned, const ChunkOptions& options) {
  if (options.min_words == 0) throw std::invalid_argument("min_words must be at least 1");
  const auto& words = recording.clean.words;
  const std::size_t n_words = words.size();
  const std::size_t n_tokens = recording.acoustic.tokens.size();

  // Word ranges closed greedily at sentence ends.
  std::vector<IndexRange> ranges;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < n_words; ++i) {
    const bool sentence_end = i + 1 == n_words || words[i + 1].sentence_index != words[i].sentence_index;
    if (sentence_end && i + 1 - begin >= options.min_words) {
      ranges.push_back({begin, i + 1});
      begin = i + 1;
    }
  }

  ChunkingResult result;
  result.dropped_words = n_words - begin;
  if (ranges.empty()) return result;

  // Acoustic tokens consumed by the script up to and including each clean word's op.
  std::vector<std::size_t> consumed_through(n_words, 0);
  std::size_t consumed = 0;
  for (const auto& op : aligned.ops) {
    if (op.acoustic_index) ++consumed;
    if (op.clean_index) consumed_through[*op.clean_index] = consumed;
  }

  const auto all_pauses = detect_pauses(recording.acoustic, options.pause_threshold);

  std::size_t acoustic_begin = 0;
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    Chunk ch;
    ch.recording_id = recording.recording_id;
    ch.chunk_index = c;
    ch.clean_words = ranges[c];
    const std::size_t acoustic_end = ranges[c].end == n_words ? n_tokens : consumed_through[ranges[c].end - 1];
    ch.acoustic_tokens = {acoustic_begin, std::max(acoustic_begin, acoustic_end)};
    acoustic_begin = ch.acoustic_tokens.end;

    for (std::size_t i = ranges[c].begin; i < ranges[c].end; ++i) {
      if (const auto& t = aligned.word_timings[i]) {
        if (!ch.span_start) ch.span_start = t->start;
        ch.span_end = t->end;
      }
    }

    if (ch.span_start) {
      const auto lo = to_microseconds(*ch.span_start);
      const auto hi = to_microseconds(*ch.span_end);
      for (const auto& p : all_pauses) {
        if (to_microseconds(p.start) < lo || to_microseconds(p.end) > hi) continue;
        Pause pause = p;
        const auto start_us = to_microseconds(p.start);
        for (std::size_t i = ranges[c].begin; i < ranges[c].end; ++i) {
          const auto& t = aligned.word_timings[i];
          if (t && to_microseconds(t->end) <= start_us) pause.preceding_clean_word = i;
        }
        ch.pauses.push_back(pause);
      }
    }

    for (const std::size_t idx : aligned.unmatched_acoustic) {
      if (ch.acoustic_tokens.contains(idx)) ch.filler_acoustic_indices.push_back(idx);
    }
    result.chunks.push_back(std::move(ch));
  }
  return result;
}

}  // namespace speechmark
