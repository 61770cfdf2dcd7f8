#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "speechmark/error.hpp"
#include "speechmark/learn.hpp"

namespace sm = speechmark;
namespace st = speechmark::testing;

namespace {

sm::FeatureVector feature_row(const std::string& id, const std::string& subject, sm::ClassLabel label,
                              std::map<std::string, double> values) {
  sm::FeatureVector f;
  f.recording_id = id;
  f.subject_id = subject;
  f.label = label;
  f.values = std::move(values);
  return f;
}

// Subjects with two recordings each; every vocabulary feature is noise except
// `planted`, which separates control from aphasia.
std::vector<sm::FeatureVector> planted_rows(std::mt19937_64& rng, const std::string& planted, std::size_t subjects) {
  const sm::ScoreVocabulary vocab;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<sm::FeatureVector> rows;
  for (std::size_t s = 0; s < subjects; ++s) {
    const bool control = s % 2 == 0;
    const std::string subject = "s" + std::to_string(100 + s);
    for (int r = 0; r < 2; ++r) {
      std::map<std::string, double> values;
      for (const auto& name : vocab.names()) values[name] = u(rng);
      values[planted] = control ? 1.0 : 0.2;
      rows.push_back(feature_row(subject + "_" + std::to_string(r), subject,
                                 control ? sm::ClassLabel::Control : sm::ClassLabel::Broca, values));
    }
  }
  return rows;
}

}  // namespace

TEST(Metrics, AllCorrect) {
  const std::vector<std::string> y{"a", "b", "b", "c"};
  const std::vector<std::string> classes{"a", "b", "c"};
  const auto m = sm::classification_metrics(y, y, classes);
  EXPECT_EQ(m.accuracy, 1.0);
  for (const auto& c : m.per_class) EXPECT_EQ(c.f1, 1.0);
  EXPECT_EQ(m.weighted.f1, 1.0);
}

TEST(Metrics, HandComputedConfusion) {
  const std::vector<std::string> predicted{"1", "1", "0", "0"};
  const std::vector<std::string> truth{"1", "0", "1", "0"};
  const std::vector<std::string> classes{"0", "1"};
  const auto m = sm::classification_metrics(predicted, truth, classes);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(m.per_class[1].f1, 0.5);
  EXPECT_DOUBLE_EQ(m.per_class[1].precision, 0.5);
  EXPECT_EQ(m.confusion[1][0], 1u);
  EXPECT_EQ(m.per_class[1].support, 2u);
}

TEST(Metrics, UndefinedPrecisionIsZero) {
  const std::vector<std::string> predicted{"a", "a"};
  const std::vector<std::string> truth{"a", "b"};
  const std::vector<std::string> classes{"a", "b"};
  const auto m = sm::classification_metrics(predicted, truth, classes);
  EXPECT_EQ(m.per_class[1].precision, 0.0);
  EXPECT_EQ(m.per_class[1].f1, 0.0);
  EXPECT_DOUBLE_EQ(m.weighted.recall, 0.5);
}

TEST(Metrics, RegressionShift) {
  const std::vector<double> truth{10, 20, 35, 50};
  for (const double c : {-7.5, 0.0, 3.0}) {
    std::vector<double> predicted = truth;
    for (auto& p : predicted) p += c;
    const auto m = sm::regression_metrics(predicted, truth);
    EXPECT_NEAR(*m.pearson, 1.0, 1e-12);
    EXPECT_NEAR(m.mae, std::abs(c), 1e-12);
  }
}

TEST(Metrics, Invariants) {
  std::mt19937_64 rng(701);
  const std::vector<std::string> classes{"a", "b", "c"};
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> predicted, truth;
    for (int i = 0; i < 20; ++i) {
      predicted.push_back(classes[pick(rng)]);
      truth.push_back(classes[pick(rng)]);
    }
    const auto m = sm::classification_metrics(predicted, truth, classes);
    std::size_t total = 0;
    for (const auto& row : m.confusion) {
      for (const auto v : row) total += v;
    }
    ASSERT_EQ(total, truth.size());
    ASSERT_EQ(m.weighted.support, truth.size());
    for (const auto& c : m.per_class) {
      ASSERT_GE(c.f1, 0.0);
      ASSERT_LE(c.f1, 1.0);
      ASSERT_GE(c.f1, std::min(c.precision, c.recall) - 1e-12);
      ASSERT_LE(c.f1, std::max(c.precision, c.recall) + 1e-12);
    }
    ASSERT_NEAR(m.weighted.recall, m.accuracy, 1e-12);
  }
}

TEST(MakeDataset, TaskLabelMapping) {
  std::vector<sm::FeatureVector> rows{
      feature_row("r1", "s1", sm::ClassLabel::Control, {{"f", 1.0}}),
      feature_row("r2", "s2", sm::ClassLabel::Anomic, {{"f", 0.5}}),
      feature_row("r3", "s3", sm::ClassLabel::Other, {{"f", 0.4}}),
  };
  rows[1].aq = 70.0;
  const std::vector<std::string> names{"f"};
  const auto binary = sm::make_dataset(rows, names, sm::Task::Binary);
  EXPECT_EQ(binary.labels(), (std::vector<std::string>{"control", "aphasia", "aphasia"}));
  const auto subtype = sm::make_dataset(rows, names, sm::Task::Subtype);
  EXPECT_EQ(subtype.labels(), (std::vector<std::string>{"control", "anomic"}));
  const auto aq = sm::make_dataset(rows, names, sm::Task::Aq);
  ASSERT_EQ(aq.samples.size(), 1u);
  EXPECT_EQ(aq.samples[0].target, 70.0);
  const std::vector<std::string> absent{"g"};
  EXPECT_THROW(sm::make_dataset(rows, absent, sm::Task::Binary), sm::DataError);
}

TEST(Loso, SeparableThreeSubjects) {
  std::vector<sm::FeatureVector> rows;
  const std::vector<std::pair<std::string, sm::ClassLabel>> subjects{
      {"s1", sm::ClassLabel::Control}, {"s2", sm::ClassLabel::Broca}, {"s3", sm::ClassLabel::Control},
      {"s4", sm::ClassLabel::Wernicke}};
  for (const auto& [s, label] : subjects) {
    for (int r = 0; r < 3; ++r) {
      const double v = label == sm::ClassLabel::Control ? 1.0 : 0.1;
      rows.push_back(feature_row(s + std::to_string(r), s, label, {{"f", v + 0.01 * r}}));
    }
  }
  const std::vector<std::string> names{"f"};
  const auto report = sm::loso(sm::make_dataset(rows, names, sm::Task::Binary), {.svc = {.C = 10.0}});
  EXPECT_EQ(report.folds, 4u);
  EXPECT_EQ(report.classification->accuracy, 1.0);
  EXPECT_EQ(report.predictions.size(), rows.size());
}

TEST(Loso, SplitsNeverShareASubject) {
  std::mt19937_64 rng(702);
  const auto rows = planted_rows(rng, "ttr", 12);
  const auto data = sm::make_dataset(rows, sm::ScoreVocabulary().names(), sm::Task::Binary);
  const auto subjects = sm::loso_subjects(data);
  EXPECT_TRUE(std::is_sorted(subjects.begin(), subjects.end()));
  for (const auto& subject : subjects) {
    const auto [train, test] = sm::loso_split(data, subject);
    ASSERT_EQ(train.size() + test.size(), data.samples.size());
    std::set<std::string> train_subjects, test_subjects;
    for (const auto i : train) train_subjects.insert(data.samples[i].subject_id);
    for (const auto i : test) test_subjects.insert(data.samples[i].subject_id);
    ASSERT_EQ(test_subjects, std::set<std::string>{subject});
    ASSERT_FALSE(train_subjects.contains(subject));
  }
}

TEST(Loso, SingleClassTrainingFoldIsFlagged) {
  std::vector<sm::FeatureVector> rows{
      feature_row("a", "s1", sm::ClassLabel::Control, {{"f", 1.0}}),
      feature_row("b", "s2", sm::ClassLabel::Control, {{"f", 0.9}}),
      feature_row("c", "s3", sm::ClassLabel::Anomic, {{"f", 0.1}}),
  };
  const std::vector<std::string> names{"f"};
  const auto report = sm::loso(sm::make_dataset(rows, names, sm::Task::Binary), {});
  ASSERT_EQ(report.flagged_folds.size(), 1u);
  EXPECT_EQ(report.flagged_folds[0].subject_id, "s3");
  EXPECT_EQ(report.predictions.back().predicted_label, "control");
}

TEST(Loso, NeedsTwoSubjects) {
  std::vector<sm::FeatureVector> rows{feature_row("a", "s1", sm::ClassLabel::Control, {{"f", 1.0}}),
                                      feature_row("b", "s1", sm::ClassLabel::Broca, {{"f", 0.2}})};
  const std::vector<std::string> names{"f"};
  EXPECT_THROW(sm::loso(sm::make_dataset(rows, names, sm::Task::Binary), {}), sm::DataError);
}

TEST(Loso, ParallelFoldsMatchSequential) {
  std::mt19937_64 rng(703);
  const auto rows = planted_rows(rng, "hdd", 10);
  const auto data = sm::make_dataset(rows, sm::ScoreVocabulary().names(), sm::Task::Binary);
  const auto a = sm::loso(data, {.jobs = 1});
  const auto b = sm::loso(data, {.jobs = 4});
  ASSERT_EQ(a.predictions.size(), b.predictions.size());
  for (std::size_t i = 0; i < a.predictions.size(); ++i) {
    EXPECT_EQ(a.predictions[i].recording_id, b.predictions[i].recording_id);
    EXPECT_EQ(a.predictions[i].predicted_label, b.predictions[i].predicted_label);
  }
}

TEST(Loso, RegressionReport) {
  std::vector<sm::FeatureVector> rows;
  for (int s = 0; s < 8; ++s) {
    const double aq = 40.0 + 7.0 * s;
    auto f = feature_row("r" + std::to_string(s), "s" + std::to_string(s), sm::ClassLabel::Anomic,
                         {{"f", aq / 100.0}});
    f.aq = aq;
    rows.push_back(f);
  }
  const std::vector<std::string> names{"f"};
  const auto report = sm::loso(sm::make_dataset(rows, names, sm::Task::Aq), {.svr = {.C = 1000.0, .epsilon = 0.1}});
  ASSERT_TRUE(report.regression.has_value());
  EXPECT_GT(*report.regression->pearson, 0.99);
  EXPECT_LT(report.regression->mae, 1.0);
}

TEST(Ablation, PlantedFeatureCategoryWins) {
  std::mt19937_64 rng(704);
  const sm::ScoreVocabulary vocab;
  const auto rows = planted_rows(rng, "noun_ratio", 30);
  const auto data = sm::make_dataset(rows, vocab.names(), sm::Task::Binary);
  const auto reports = sm::ablation_by_category(data, vocab, {.svc = {.C = 10.0}});
  ASSERT_EQ(reports.size(), 5u);
  std::set<sm::ScoreCategory> seen;
  for (const auto& r : reports) {
    seen.insert(r.category);
    EXPECT_EQ(r.report.feature_count, vocab.names_in(r.category).size());
    const double f1 = r.report.classification->weighted.f1;
    if (r.category == sm::ScoreCategory::Syntax) {
      EXPECT_EQ(f1, 1.0);
    } else {
      EXPECT_LT(f1, 0.8) << sm::to_string(r.category);
    }
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Ablation, CategoryWithoutFeaturesIsAnError) {
  std::mt19937_64 rng(705);
  const sm::ScoreVocabulary vocab;
  const auto rows = planted_rows(rng, "ttr", 6);
  const std::vector<std::string> only_lexical{"ttr", "hdd"};
  const auto data = sm::make_dataset(rows, only_lexical, sm::Task::Binary);
  EXPECT_THROW(sm::ablation_by_category(data, vocab, {}), sm::DataError);
}

TEST(Train, FullDatasetModel) {
  std::mt19937_64 rng(706);
  const auto rows = planted_rows(rng, "ttr", 6);
  const auto data = sm::make_dataset(rows, sm::ScoreVocabulary().names(), sm::Task::Binary);
  const auto model = sm::train(data, {.svc = {.C = 10.0}});
  EXPECT_EQ(model.classes, sm::task_classes(sm::Task::Binary));
  for (const auto& s : data.samples) EXPECT_EQ(model.predict_class(s.x), s.label);
}
