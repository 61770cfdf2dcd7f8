#include "speechmark/learn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "parallel.hpp"
#include "speechmark/error.hpp"
#include "speechmark/stats.hpp"

namespace speechmark {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::Binary: return "binary";
    case Task::Subtype: return "subtype";
    case Task::Aq: return "aq";
  }
  return "binary";
}

std::optional<Task> parse_task(std::string_view text) {
  for (const auto t : {Task::Binary, Task::Subtype, Task::Aq}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

bool is_classification(Task task) { return task != Task::Aq; }

std::vector<std::string> task_classes(Task task) {
  switch (task) {
    case Task::Binary: return {"control", "aphasia"};
    case Task::Subtype: return {"control", "anomic", "broca", "wernicke"};
    case Task::Aq: return {};
  }
  return {};
}

TrainingData Dataset::training_data() const {
  TrainingData out;
  out.feature_names = feature_names;
  out.rows.reserve(samples.size());
  for (const auto& s : samples) out.rows.push_back(s.x);
  return out;
}

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  for (const auto& s : samples) out.push_back(s.label);
  return out;
}

std::vector<double> Dataset::targets() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.target);
  return out;
}

Dataset Dataset::select(std::span<const std::string> names) const {
  std::vector<std::size_t> columns;
  for (const auto& name : names) {
    const auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) throw std::invalid_argument("unknown feature '" + name + "'");
    columns.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  Dataset out;
  out.task = task;
  out.feature_names.assign(names.begin(), names.end());
  for (const auto& s : samples) {
    Sample t = s;
    t.x.clear();
    for (const auto c : columns) t.x.push_back(s.x[c]);
    out.samples.push_back(std::move(t));
  }
  return out;
}

Dataset make_dataset(std::span<const FeatureVector> features, std::span<const std::string> feature_names,
                     Task task) {
  Dataset data;
  data.task = task;
  data.feature_names.assign(feature_names.begin(), feature_names.end());
  for (const auto& f : features) {
    Sample s;
    s.recording_id = f.recording_id;
    s.subject_id = f.subject_id;
    switch (task) {
      case Task::Binary:
        if (!f.label) continue;
        s.label = *f.label == ClassLabel::Control ? "control" : "aphasia";
        break;
      case Task::Subtype:
        if (!f.label || *f.label == ClassLabel::Other) continue;
        s.label = std::string(to_string(*f.label));
        break;
      case Task::Aq:
        if (!f.aq) continue;
        s.target = *f.aq;
        break;
    }
    for (const auto& name : feature_names) {
      const auto it = f.values.find(name);
      if (it == f.values.end()) throw DataError(f.recording_id + ": feature '" + name + "' is absent");
      s.x.push_back(it->second);
    }
    data.samples.push_back(std::move(s));
  }
  return data;
}

ClassificationMetrics classification_metrics(std::span<const std::string> predicted,
                                             std::span<const std::string> truth,
                                             std::span<const std::string> classes) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("prediction and truth lengths differ");
  if (truth.empty()) throw std::invalid_argument("no predictions to score");
  const std::size_t k = classes.size();
  auto index = [&](const std::string& label) {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw std::invalid_argument("label '" + label + "' is not in the class list");
    return static_cast<std::size_t>(it - classes.begin());
  };

  ClassificationMetrics m;
  m.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = index(truth[i]);
    const auto p = index(predicted[i]);
    ++m.confusion[t][p];
    correct += t == p ? 1 : 0;
  }
  const double n = static_cast<double>(truth.size());
  m.accuracy = static_cast<double>(correct) / n;
  m.weighted.label = "weighted";

  for (std::size_t c = 0; c < k; ++c) {
    std::size_t tp = m.confusion[c][c];
    std::size_t predicted_c = 0;
    std::size_t support = 0;
    for (std::size_t o = 0; o < k; ++o) {
      predicted_c += m.confusion[o][c];
      support += m.confusion[c][o];
    }
    ClassMetrics cm;
    cm.label = classes[c];
    cm.support = support;
    cm.precision = predicted_c > 0 ? static_cast<double>(tp) / static_cast<double>(predicted_c) : 0.0;
    cm.recall = support > 0 ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
    cm.f1 = cm.precision + cm.recall > 0.0 ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall) : 0.0;
    const double w = static_cast<double>(support) / n;
    m.weighted.precision += w * cm.precision;
    m.weighted.recall += w * cm.recall;
    m.weighted.f1 += w * cm.f1;
    m.weighted.support += support;
    m.per_class.push_back(cm);
  }
  return m;
}

RegressionMetrics regression_metrics(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("prediction and truth lengths differ");
  if (truth.empty()) throw std::invalid_argument("no predictions to score");
  RegressionMetrics m;
  m.n = truth.size();
  m.mae = stats::mean_absolute_error(predicted, truth);
  m.pearson = stats::pearson(predicted, truth);
  return m;
}

std::vector<std::string> loso_subjects(const Dataset& data) {
  std::set<std::string> subjects;
  for (const auto& s : data.samples) subjects.insert(s.subject_id);
  return {subjects.begin(), subjects.end()};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> loso_split(const Dataset& data,
                                                                         std::string_view subject) {
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    (data.samples[i].subject_id == subject ? out.second : out.first).push_back(i);
  }
  return out;
}

namespace {

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
  Dataset out;
  out.task = data.task;
  out.feature_names = data.feature_names;
  for (const auto i : indices) out.samples.push_back(data.samples[i]);
  return out;
}

struct FoldResult {
  std::vector<Prediction> predictions;
  std::optional<FoldNote> note;
};

FoldResult run_fold(const Dataset& data, const std::string& subject, const LosoOptions& options) {
  const auto [train_idx, test_idx] = loso_split(data, subject);
  const Dataset train_set = subset(data, train_idx);
  FoldResult result;

  std::optional<LinearModel> model;
  std::string constant_label;
  double constant_value = 0.0;
  if (is_classification(data.task)) {
    const auto labels = train_set.labels();
    const std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) {
      constant_label = labels.empty() ? task_classes(data.task).front() : labels.front();
      result.note = FoldNote{subject, "training split has a single class '" + constant_label + "'"};
    } else {
      const auto classes = task_classes(data.task);
      model = train_svc(train_set.training_data(), labels, options.svc, classes);
    }
  } else if (train_set.samples.size() < 2) {
    const auto targets = train_set.targets();
    constant_value = targets.empty() ? 0.0 : stats::mean(targets);
    result.note = FoldNote{subject, "training split has fewer than two samples"};
  } else {
    model = train_svr(train_set.training_data(), train_set.targets(), options.svr);
  }
  if (model && !model->converged) {
    result.note = FoldNote{subject, "solver reached max_iter without converging"};
  }

  for (const auto i : test_idx) {
    const auto& s = data.samples[i];
    Prediction p;
    p.recording_id = s.recording_id;
    p.subject_id = s.subject_id;
    p.truth_label = s.label;
    p.truth_value = s.target;
    if (is_classification(data.task)) p.predicted_label = model ? model->predict_class(s.x) : constant_label;
    else p.predicted_value = model ? model->predict_value(s.x) : constant_value;
    result.predictions.push_back(std::move(p));
  }
  return result;
}

}  // namespace

EvalReport loso(const Dataset& data, const LosoOptions& options) {
  const auto subjects = loso_subjects(data);
  if (subjects.size() < 2) {
    throw DataError("LOSO needs at least two subjects, found " + std::to_string(subjects.size()));
  }
  std::vector<FoldResult> folds(subjects.size());
  detail::parallel_for(subjects.size(), options.jobs,
                       [&](std::size_t f) { folds[f] = run_fold(data, subjects[f], options); });

  EvalReport report;
  report.task = data.task;
  report.folds = subjects.size();
  report.feature_count = data.feature_names.size();
  for (auto& f : folds) {
    if (f.note) report.flagged_folds.push_back(*f.note);
    for (auto& p : f.predictions) report.predictions.push_back(std::move(p));
  }

  if (is_classification(data.task)) {
    std::vector<std::string> predicted, truth;
    for (const auto& p : report.predictions) {
      predicted.push_back(p.predicted_label);
      truth.push_back(p.truth_label);
    }
    report.classification = classification_metrics(predicted, truth, task_classes(data.task));
  } else {
    std::vector<double> predicted, truth;
    for (const auto& p : report.predictions) {
      predicted.push_back(p.predicted_value);
      truth.push_back(p.truth_value);
    }
    report.regression = regression_metrics(predicted, truth);
  }
  return report;
}

LinearModel train(const Dataset& data, const LosoOptions& options) {
  if (is_classification(data.task)) {
    const auto labels = data.labels();
    if (std::set<std::string>(labels.begin(), labels.end()).size() < 2) {
      throw DataError("training set needs at least two classes");
    }
    return train_svc(data.training_data(), labels, options.svc, task_classes(data.task));
  }
  if (data.samples.size() < 2) throw DataError("regression needs at least two samples with an AQ");
  return train_svr(data.training_data(), data.targets(), options.svr);
}

std::vector<CategoryReport> ablation_by_category(const Dataset& data, const ScoreVocabulary& vocabulary,
                                                 const LosoOptions& options) {
  std::vector<CategoryReport> out;
  for (const auto category : kAllCategories) {
    std::vector<std::string> names;
    for (const auto& name : vocabulary.names_in(category)) {
      if (std::find(data.feature_names.begin(), data.feature_names.end(), name) != data.feature_names.end()) {
        names.push_back(name);
      }
    }
    if (names.empty()) throw DataError("score category '" + std::string(to_string(category)) + "' has no features");
    out.push_back({category, loso(data.select(names), options)});
  }
  return out;
}

}  // namespace speechmark
