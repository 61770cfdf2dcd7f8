#include <random>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "speechmark/annotate.hpp"

namespace sm = speechmark;
namespace st = speechmark::testing;

namespace {

sm::AcousticTranscript layout(std::initializer_list<std::pair<double, double>> spans, double total) {
  sm::AcousticTranscript a;
  for (const auto& [s, e] : spans) a.tokens.push_back({"w", s, e});
  a.total_duration = total;
  return a;
}

// Random recording on a 10 ms grid; some acoustic tokens are fillers.
sm::Recording random_recording(std::mt19937_64& rng, std::size_t sentences) {
  std::uniform_int_distribution<int> sentence_len(1, 40);
  std::uniform_int_distribution<int> ticks(1, 60);
  std::bernoulli_distribution filler(0.1);
  sm::Recording rec;
  rec.recording_id = "r";
  rec.subject_id = "s";
  std::int64_t t = 0;
  for (std::size_t s = 0; s < sentences; ++s) {
    for (int k = sentence_len(rng); k > 0; --k) {
      if (filler(rng)) {
        t += ticks(rng);
        const auto start = t;
        t += ticks(rng);
        rec.acoustic.tokens.push_back({"uh", start / 100.0, t / 100.0});
      }
      const std::string w = "w" + std::to_string(rec.clean.words.size());
      t += ticks(rng);
      const auto start = t;
      t += ticks(rng);
      rec.acoustic.tokens.push_back({w, start / 100.0, t / 100.0});
      sm::CleanWord word;
      word.text = w;
      word.sentence_index = s;
      rec.clean.words.push_back(word);
    }
  }
  rec.acoustic.total_duration = (t + ticks(rng)) / 100.0;
  rec.clean.sentence_count = sentences;
  return rec;
}

}  // namespace

TEST(DetectPauses, GapAboveThreshold) {
  const auto pauses = sm::detect_pauses(layout({{0.0, 0.5}, {0.9, 1.2}}, 1.2), 0.3);
  ASSERT_EQ(pauses.size(), 1u);
  EXPECT_DOUBLE_EQ(pauses[0].start, 0.5);
  EXPECT_DOUBLE_EQ(pauses[0].end, 0.9);
}

TEST(DetectPauses, GapEqualToThresholdIsNotAPause) {
  EXPECT_TRUE(sm::detect_pauses(layout({{0.0, 0.5}, {0.8, 1.2}}, 1.2), 0.3).empty());
  EXPECT_TRUE(sm::detect_pauses(layout({{0.3, 0.5}}, 0.8), 0.3).empty());
}

TEST(DetectPauses, LeadingAndTrailingSilence) {
  const auto pauses = sm::detect_pauses(layout({{0.5, 0.6}}, 1.0), 0.3);
  ASSERT_EQ(pauses.size(), 2u);
  EXPECT_DOUBLE_EQ(pauses[0].start, 0.0);
  EXPECT_DOUBLE_EQ(pauses[1].end, 1.0);
}

TEST(DetectPauses, MatchesGapScan) {
  std::mt19937_64 rng(201);
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_int_distribution<int> gap(0, 60);
  std::uniform_int_distribution<int> dur(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<st::TickToken> ticks;
    std::int64_t t = 0;
    for (int k = count(rng); k > 0; --k) {
      t += gap(rng);
      const auto s = t;
      t += dur(rng);
      ticks.push_back({s, t});
    }
    const std::int64_t total = t + gap(rng);
    sm::AcousticTranscript a;
    for (const auto& tk : ticks) a.tokens.push_back({"w", tk.start / 100.0, tk.end / 100.0});
    a.total_duration = total / 100.0;

    const auto expected = st::gap_scan(ticks, total, 30);
    const auto pauses = sm::detect_pauses(a, 0.300);
    ASSERT_EQ(pauses.size(), expected.size());
    for (std::size_t i = 0; i < pauses.size(); ++i) {
      ASSERT_EQ(sm::to_microseconds(pauses[i].start), expected[i].start * 10000);
      ASSERT_EQ(sm::to_microseconds(pauses[i].end), expected[i].end * 10000);
    }
  }
}

TEST(DetectFillers, NoneWhenFullyMatched) {
  const auto rec = st::uniform_recording(2, 5);
  const auto aligned = sm::align(rec.acoustic, rec.clean);
  EXPECT_TRUE(sm::detect_fillers(aligned, rec.acoustic).empty());
}

TEST(Chunk, GreedyAtSentenceEnds) {
  const auto rec = st::uniform_recording(5, 60);
  const auto result = sm::chunk(rec, sm::align(rec.acoustic, rec.clean), {200, 0.3});
  ASSERT_EQ(result.chunks.size(), 1u);
  EXPECT_EQ(result.chunks[0].clean_words, (sm::IndexRange{0, 240}));
  EXPECT_EQ(result.dropped_words, 60u);
  EXPECT_EQ(result.chunks[0].acoustic_tokens, (sm::IndexRange{0, 240}));
}

TEST(Chunk, SingleSentenceOfExactlyMinWords) {
  const auto rec = st::uniform_recording(1, 200);
  const auto result = sm::chunk(rec, sm::align(rec.acoustic, rec.clean), {200, 0.3});
  ASSERT_EQ(result.chunks.size(), 1u);
  EXPECT_EQ(result.dropped_words, 0u);
}

TEST(Chunk, TooShortRecordingIsSkipped) {
  const auto rec = st::uniform_recording(1, 199);
  const auto result = sm::chunk(rec, sm::align(rec.acoustic, rec.clean), {200, 0.3});
  EXPECT_TRUE(result.skipped());
  EXPECT_EQ(result.dropped_words, 199u);
}

TEST(Chunk, DurationUsesTransferredTimings) {
  const auto rec = st::uniform_recording(1, 10);
  const auto result = sm::chunk(rec, sm::align(rec.acoustic, rec.clean), {5, 0.3});
  ASSERT_EQ(result.chunks.size(), 1u);
  EXPECT_DOUBLE_EQ(*result.chunks[0].span_start, rec.acoustic.tokens.front().start);
  EXPECT_DOUBLE_EQ(*result.chunks[0].span_end, rec.acoustic.tokens.back().end);
}

TEST(Chunk, PauseAttachesToPrecedingWord) {
  auto rec = st::simple_recording({{"a", "b", "c"}}, 0.3, 0.1);
  rec.acoustic.tokens[2].start += 0.5;
  rec.acoustic.tokens[2].end += 0.5;
  rec.acoustic.total_duration += 0.5;
  const auto result = sm::chunk(rec, sm::align(rec.acoustic, rec.clean), {3, 0.3});
  ASSERT_EQ(result.chunks.size(), 1u);
  ASSERT_EQ(result.chunks[0].pauses.size(), 1u);
  EXPECT_EQ(result.chunks[0].pauses[0].preceding_clean_word, 1u);
}

TEST(Chunk, StructuralInvariants) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rec = random_recording(rng, 12);
    const auto aligned = sm::align(rec.acoustic, rec.clean);
    const sm::ChunkOptions options{50, 0.3};
    const auto result = sm::chunk(rec, aligned, options);

    std::size_t next_word = 0;
    std::size_t next_token = 0;
    for (std::size_t c = 0; c < result.chunks.size(); ++c) {
      const auto& ch = result.chunks[c];
      ASSERT_EQ(ch.chunk_index, c);
      ASSERT_EQ(ch.clean_words.begin, next_word);
      ASSERT_EQ(ch.acoustic_tokens.begin, next_token);
      ASSERT_GE(ch.clean_words.size(), options.min_words);
      const std::size_t last = ch.clean_words.end - 1;
      const bool sentence_end = ch.clean_words.end == rec.clean.words.size() ||
                                rec.clean.words[last + 1].sentence_index != rec.clean.words[last].sentence_index;
      ASSERT_TRUE(sentence_end);
      next_word = ch.clean_words.end;
      next_token = ch.acoustic_tokens.end;

      std::size_t timed = 0;
      for (std::size_t i = ch.clean_words.begin; i < ch.clean_words.end; ++i) timed += aligned.word_timings[i] ? 1 : 0;
      ASSERT_LE(ch.pauses.size(), ch.acoustic_tokens.size() + 1);
      if (ch.filler_acoustic_indices.empty()) ASSERT_LE(ch.pauses.size(), timed + 1);
      for (const auto idx : ch.filler_acoustic_indices) ASSERT_TRUE(ch.acoustic_tokens.contains(idx));
      for (const auto& p : ch.pauses) ASSERT_GT(sm::to_microseconds(p.duration()), 300000);
    }
    ASSERT_EQ(next_word + result.dropped_words, rec.clean.words.size());
  }
}
