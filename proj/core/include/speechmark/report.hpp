#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speechmark/learn.hpp"

namespace speechmark {

/// Table layouts rendered by `report`.
enum class TableShape {
  BinaryClassification,  // Method | Manual annotation | Accuracy | F1
  PerClass,              // Class | Precision | Recall | F1, plus a weighted-average row
  PerCategory,           // Score Category | Precision | Recall | F1
  Regression,            // Method | Manual annotation | PC | MAE
};

const std::vector<std::string>& table_columns(TableShape shape);

nlohmann::json to_json(const ClassificationMetrics& metrics);
nlohmann::json to_json(const RegressionMetrics& metrics);
nlohmann::json to_json(const EvalReport& report);
nlohmann::json ablation_to_json(Task task, std::span<const CategoryReport> reports);
EvalReport eval_report_from_json(const nlohmann::json& doc);

/// Shape a report document renders as: binary LOSO reports as the binary
/// table, other classification reports per class, ablation documents per
/// category and AQ reports as the regression table.
TableShape table_shape_for(const nlohmann::json& doc);

/// Markdown table for a report document written by `loso`. Percentages use
/// one decimal; PC three and MAE two decimals.
std::string render_markdown(const nlohmann::json& doc);

}  // namespace speechmark
