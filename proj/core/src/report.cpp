#include "speechmark/report.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "speechmark/error.hpp"

namespace speechmark {

const std::vector<std::string>& table_columns(TableShape shape) {
  static const std::vector<std::string> binary{"Method", "Manual annotation", "Accuracy", "F1"};
  static const std::vector<std::string> per_class{"Class", "Precision", "Recall", "F1"};
  static const std::vector<std::string> per_category{"Score Category", "Precision", "Recall", "F1"};
  static const std::vector<std::string> regression{"Method", "Manual annotation", "PC", "MAE"};
  switch (shape) {
    case TableShape::BinaryClassification: return binary;
    case TableShape::PerClass: return per_class;
    case TableShape::PerCategory: return per_category;
    case TableShape::Regression: return regression;
  }
  return binary;
}

namespace {

nlohmann::json to_json(const ClassMetrics& m) {
  return {{"label", m.label}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
}

ClassMetrics class_metrics_from_json(const nlohmann::json& doc) {
  ClassMetrics m;
  m.label = doc.at("label").get<std::string>();
  m.precision = doc.at("precision").get<double>();
  m.recall = doc.at("recall").get<double>();
  m.f1 = doc.at("f1").get<double>();
  m.support = doc.at("support").get<std::size_t>();
  return m;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string percent(double fraction) { return fixed(fraction * 100.0, 1); }

std::string capitalized(std::string text) {
  if (!text.empty()) text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  out += "|";
  for (const auto& c : cells) out += " " + c + " |";
  out += "\n";
}

void append_header(std::string& out, TableShape shape) {
  const auto& columns = table_columns(shape);
  append_row(out, columns);
  out += "|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---|";
  out += "\n";
}

}  // namespace

nlohmann::json to_json(const ClassificationMetrics& metrics) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : metrics.per_class) classes.push_back(to_json(c));
  return {{"accuracy", metrics.accuracy},
          {"classes", std::move(classes)},
          {"weighted", to_json(metrics.weighted)},
          {"confusion", metrics.confusion}};
}

nlohmann::json to_json(const RegressionMetrics& metrics) {
  return {{"pearson", metrics.pearson ? nlohmann::json(*metrics.pearson) : nlohmann::json(nullptr)},
          {"mae", metrics.mae},
          {"n", metrics.n}};
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["kind"] = "loso";
  doc["task"] = std::string(to_string(report.task));
  doc["folds"] = report.folds;
  doc["feature_count"] = report.feature_count;
  if (report.classification) doc["classification"] = to_json(*report.classification);
  if (report.regression) doc["regression"] = to_json(*report.regression);
  nlohmann::json flagged = nlohmann::json::array();
  for (const auto& f : report.flagged_folds) flagged.push_back({{"subject_id", f.subject_id}, {"reason", f.reason}});
  doc["flagged_folds"] = std::move(flagged);
  nlohmann::json predictions = nlohmann::json::array();
  for (const auto& p : report.predictions) {
    nlohmann::json row{{"recording_id", p.recording_id}, {"subject_id", p.subject_id}};
    if (is_classification(report.task)) {
      row["truth"] = p.truth_label;
      row["predicted"] = p.predicted_label;
    } else {
      row["truth"] = p.truth_value;
      row["predicted"] = p.predicted_value;
    }
    predictions.push_back(std::move(row));
  }
  doc["predictions"] = std::move(predictions);
  return doc;
}

nlohmann::json ablation_to_json(Task task, std::span<const CategoryReport> reports) {
  nlohmann::json categories = nlohmann::json::array();
  for (const auto& r : reports) {
    categories.push_back({{"category", std::string(to_string(r.category))}, {"report", to_json(r.report)}});
  }
  return {{"kind", "ablation"}, {"task", std::string(to_string(task))}, {"categories", std::move(categories)}};
}

EvalReport eval_report_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("kind").get<std::string>() != "loso") throw DataError("report: expected a LOSO report");
    EvalReport r;
    const auto task = parse_task(doc.at("task").get<std::string>());
    if (!task) throw DataError("report: unknown task");
    r.task = *task;
    r.folds = doc.at("folds").get<std::size_t>();
    r.feature_count = doc.at("feature_count").get<std::size_t>();
    if (doc.contains("classification")) {
      const auto& c = doc.at("classification");
      ClassificationMetrics m;
      m.accuracy = c.at("accuracy").get<double>();
      for (const auto& row : c.at("classes")) m.per_class.push_back(class_metrics_from_json(row));
      m.weighted = class_metrics_from_json(c.at("weighted"));
      m.confusion = c.at("confusion").get<std::vector<std::vector<std::size_t>>>();
      r.classification = std::move(m);
    }
    if (doc.contains("regression")) {
      const auto& g = doc.at("regression");
      RegressionMetrics m;
      if (!g.at("pearson").is_null()) m.pearson = g.at("pearson").get<double>();
      m.mae = g.at("mae").get<double>();
      m.n = g.at("n").get<std::size_t>();
      r.regression = m;
    }
    for (const auto& f : doc.at("flagged_folds")) {
      r.flagged_folds.push_back({f.at("subject_id").get<std::string>(), f.at("reason").get<std::string>()});
    }
    for (const auto& row : doc.at("predictions")) {
      Prediction p;
      p.recording_id = row.at("recording_id").get<std::string>();
      p.subject_id = row.at("subject_id").get<std::string>();
      if (is_classification(r.task)) {
        p.truth_label = row.at("truth").get<std::string>();
        p.predicted_label = row.at("predicted").get<std::string>();
      } else {
        p.truth_value = row.at("truth").get<double>();
        p.predicted_value = row.at("predicted").get<double>();
      }
      r.predictions.push_back(std::move(p));
    }
    if (is_classification(r.task) != r.classification.has_value()) {
      throw DataError("report: metrics do not match the task");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
}

TableShape table_shape_for(const nlohmann::json& doc) {
  const auto kind = doc.value("kind", std::string());
  const auto task = parse_task(doc.value("task", std::string()));
  if (!task) throw DataError("report: unknown or missing task");
  if (kind == "ablation") {
    if (!is_classification(*task)) throw DataError("report: per-category tables need a classification task");
    return TableShape::PerCategory;
  }
  if (kind != "loso") throw DataError("report: unknown document kind '" + kind + "'");
  switch (*task) {
    case Task::Binary: return TableShape::BinaryClassification;
    case Task::Subtype: return TableShape::PerClass;
    case Task::Aq: return TableShape::Regression;
  }
  return TableShape::BinaryClassification;
}

std::string render_markdown(const nlohmann::json& doc) {
  const TableShape shape = table_shape_for(doc);
  std::string out;
  append_header(out, shape);
  switch (shape) {
    case TableShape::BinaryClassification: {
      const auto r = eval_report_from_json(doc);
      const auto& m = *r.classification;
      double f1 = 0.0;
      for (const auto& c : m.per_class) {
        if (c.label == "aphasia") f1 = c.f1;
      }
      append_row(out, {"Ours (SVC)", "No", percent(m.accuracy), percent(f1)});
      break;
    }
    case TableShape::PerClass: {
      const auto r = eval_report_from_json(doc);
      for (const auto& c : r.classification->per_class) {
        append_row(out, {capitalized(c.label), percent(c.precision), percent(c.recall), percent(c.f1)});
      }
      const auto& w = r.classification->weighted;
      append_row(out, {"Weighted average", percent(w.precision), percent(w.recall), percent(w.f1)});
      break;
    }
    case TableShape::PerCategory: {
      for (const auto& entry : doc.at("categories")) {
        const auto category = parse_category(entry.at("category").get<std::string>());
        if (!category) throw DataError("report: unknown score category");
        const auto r = eval_report_from_json(entry.at("report"));
        const auto& w = r.classification->weighted;
        append_row(out, {std::string(display_name(*category)), percent(w.precision), percent(w.recall),
                         percent(w.f1)});
      }
      break;
    }
    case TableShape::Regression: {
      const auto r = eval_report_from_json(doc);
      const auto& m = *r.regression;
      append_row(out, {"Ours (SVR)", "No", m.pearson ? fixed(*m.pearson, 3) : "n/a", fixed(m.mae, 2)});
      break;
    }
  }
  return out;
}

}  // namespace speechmark
