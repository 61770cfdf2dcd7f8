#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "speechmark/tables.hpp"

namespace sm = speechmark;

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(sm::format_number(0.1), "0.1");
  EXPECT_EQ(sm::format_number(2.0), "2");
  std::mt19937_64 rng(801);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) / std::pow(10.0, i % 12);
    EXPECT_EQ(std::stod(sm::format_number(v)), v);
  }
}

TEST(SplitCsv, QuotedFields) {
  EXPECT_EQ(sm::split_csv_line("a,\"b,c\",,\"d\"\"e\""), (std::vector<std::string>{"a", "b,c", "", "d\"e"}));
  EXPECT_EQ(sm::split_csv_line(""), std::vector<std::string>{""});
}

TEST(ScoresCsv, RoundTrip) {
  const sm::ScoreVocabulary vocab;
  sm::RecordingScores row;
  row.recording_id = "r,1";
  row.subject_id = "s1";
  row.label = sm::ClassLabel::Wernicke;
  row.aq = 55.5;
  row.chunks = 2;
  std::size_t k = 0;
  for (const auto& name : vocab.names()) {
    if (k++ % 5 == 0) row.scores.mark_missing(name);
    else row.scores.set(name, 1.0 / static_cast<double>(k));
  }
  std::stringstream buf;
  sm::write_scores_csv(buf, std::vector{row}, vocab);
  const auto back = sm::read_scores_csv(buf, vocab);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].recording_id, row.recording_id);
  EXPECT_EQ(back[0].label, row.label);
  EXPECT_EQ(back[0].aq, row.aq);
  EXPECT_EQ(back[0].chunks, 2u);
  EXPECT_EQ(back[0].scores, row.scores);
}

TEST(FeaturesCsv, RoundTrip) {
  const std::vector<std::string> names{"ttr", "hdd"};
  sm::FeatureVector f;
  f.recording_id = "r1";
  f.subject_id = "s1";
  f.values = {{"ttr", 0.25}, {"hdd", 1.0}};
  std::stringstream buf;
  sm::write_features_csv(buf, std::vector{f}, names);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')), "recording_id,subject_id,label,aq,ttr,hdd");
  const auto table = sm::read_features_csv(buf);
  EXPECT_EQ(table.names, names);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0], f);
}
