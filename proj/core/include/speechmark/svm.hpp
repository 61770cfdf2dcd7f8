#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace speechmark {

/// Dense row-major design matrix with named columns.
struct TrainingData {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;

  std::size_t dimension() const { return feature_names.size(); }
};

struct SvcOptions {
  double C = 0.1;
  std::size_t max_iter = 50000;
  double tol = 1e-4;
  std::uint64_t seed = 0;
};

struct SvrOptions {
  double C = 0.1;
  double epsilon = 0.1;
  std::size_t max_iter = 50000;
  double tol = 1e-4;
};

/// Linear decision functions. Classifiers with two classes hold one row
/// (positive side = classes[1]); with K > 2 classes, one one-vs-rest row per
/// class. Regressors hold one row.
struct LinearModel {
  enum class Kind { Classifier, Regressor };

  Kind kind = Kind::Classifier;
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  double target_min = 0.0;
  double target_max = 0.0;
  bool converged = true;
  std::size_t iterations = 0;

  std::vector<double> decision_values(std::span<const double> x) const;
  std::string predict_class(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;

  bool operator==(const LinearModel&) const = default;
};

/// Index of the largest score; the first one wins ties.
std::size_t argmax(std::span<const double> scores);

/// L2-regularized squared-hinge linear SVC solved by dual coordinate
/// descent, one-vs-rest for more than two classes. The bias is an extra
/// constant feature and is regularized with the weights. Visiting order is a
/// seeded permutation, so identical inputs give bit-identical models.
/// `class_order` fixes the class list; when empty the sorted distinct labels
/// are used.
LinearModel train_svc(const TrainingData& data, std::span<const std::string> labels,
                      const SvcOptions& options, std::span<const std::string> class_order = {});

/// Linear epsilon-insensitive SVR with an unregularized bias, solved by
/// sequential minimal optimization on the dual with a cached Gram matrix.
LinearModel train_svr(const TrainingData& data, std::span<const double> targets,
                      const SvrOptions& options);

nlohmann::json to_json(const LinearModel& model);
LinearModel linear_model_from_json(const nlohmann::json& doc);

}  // namespace speechmark
