#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "speechmark/prototype.hpp"
#include "speechmark/svm.hpp"
#include "speechmark/vocabulary.hpp"

namespace speechmark {

/// binary: control vs any aphasia; subtype: control/anomic/broca/wernicke;
/// aq: regression on the aphasia quotient.
enum class Task { Binary, Subtype, Aq };

std::string_view to_string(Task task);
std::optional<Task> parse_task(std::string_view text);
bool is_classification(Task task);
/// Class order used in models and reports.
std::vector<std::string> task_classes(Task task);

struct Sample {
  std::string recording_id;
  std::string subject_id;
  std::vector<double> x;
  std::string label;
  double target = 0.0;
};

struct Dataset {
  Task task = Task::Binary;
  std::vector<std::string> feature_names;
  std::vector<Sample> samples;

  TrainingData training_data() const;
  std::vector<std::string> labels() const;
  std::vector<double> targets() const;
  /// Same samples restricted to the named feature columns.
  Dataset select(std::span<const std::string> names) const;
};

/// Keeps the recordings usable for `task` (labeled for classification, with
/// an AQ for regression) with columns in `feature_names` order.
Dataset make_dataset(std::span<const FeatureVector> features,
                     std::span<const std::string> feature_names, Task task);

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct ClassificationMetrics {
  std::vector<ClassMetrics> per_class;
  ClassMetrics weighted;
  double accuracy = 0.0;
  /// confusion[truth][predicted], indexed like per_class.
  std::vector<std::vector<std::size_t>> confusion;
};

struct RegressionMetrics {
  std::optional<double> pearson;
  double mae = 0.0;
  std::size_t n = 0;
};

/// Per-class precision/recall/F1 (0 when undefined), support-weighted
/// averages and accuracy. Throws std::invalid_argument on length mismatch or
/// empty input.
ClassificationMetrics classification_metrics(std::span<const std::string> predicted,
                                             std::span<const std::string> truth,
                                             std::span<const std::string> classes);
RegressionMetrics regression_metrics(std::span<const double> predicted,
                                     std::span<const double> truth);

struct Prediction {
  std::string recording_id;
  std::string subject_id;
  std::string truth_label;
  std::string predicted_label;
  double truth_value = 0.0;
  double predicted_value = 0.0;
};

struct FoldNote {
  std::string subject_id;
  std::string reason;
};

struct EvalReport {
  Task task = Task::Binary;
  std::size_t folds = 0;
  std::size_t feature_count = 0;
  std::optional<ClassificationMetrics> classification;
  std::optional<RegressionMetrics> regression;
  std::vector<FoldNote> flagged_folds;
  std::vector<Prediction> predictions;
};

struct LosoOptions {
  SvcOptions svc;
  SvrOptions svr;
  std::size_t jobs = 1;
};

/// Subjects, sorted, each held out once.
std::vector<std::string> loso_subjects(const Dataset& data);
/// Training and test sample indices for the fold holding out `subject`.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> loso_split(const Dataset& data,
                                                                         std::string_view subject);

/// Leave-one-subject-out evaluation. Folds whose training split has a single
/// class predict that class and are flagged. Throws DataError with fewer
/// than two subjects.
EvalReport loso(const Dataset& data, const LosoOptions& options);

/// Trains on the full dataset with the task's learner.
LinearModel train(const Dataset& data, const LosoOptions& options);

struct CategoryReport {
  ScoreCategory category;
  EvalReport report;
};

/// LOSO restricted to each score category's features in turn. Throws
/// DataError when a category has no features in the dataset.
std::vector<CategoryReport> ablation_by_category(const Dataset& data,
                                                 const ScoreVocabulary& vocabulary,
                                                 const LosoOptions& options);

}  // namespace speechmark
