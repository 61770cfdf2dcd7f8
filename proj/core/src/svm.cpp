#include "speechmark/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace speechmark {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::logic_error("dot: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void check_rows(const TrainingData& data) {
  for (const auto& row : data.rows) {
    if (row.size() != data.dimension()) throw std::invalid_argument("training row has wrong dimension");
    for (const double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("training data contains a non-finite value");
    }
  }
}

struct BinaryFit {
  std::vector<double> w;
  double b = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Dual coordinate descent for the squared hinge loss. Column d of the
// augmented design is the constant bias feature.
BinaryFit fit_binary(const TrainingData& data, std::span<const double> y, const SvcOptions& options) {
  const std::size_t n = data.rows.size();
  const std::size_t d = data.dimension();
  const double diag = 0.5 / options.C;

  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) qd[i] = dot(data.rows[i], data.rows[i]) + 1.0 + diag;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(d + 1, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(options.seed);

  BinaryFit fit;
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    std::shuffle(order.begin(), order.end(), rng);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (const std::size_t i : order) {
      const auto& x = data.rows[i];
      const double g = y[i] * (dot(std::span<const double>(w).first(d), x) + w[d]) - 1.0 + diag * alpha[i];
      const double pg = alpha[i] == 0.0 ? std::min(g, 0.0) : g;
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::abs(pg) > 1e-12) {
        const double old = alpha[i];
        alpha[i] = std::max(old - g / qd[i], 0.0);
        const double step = (alpha[i] - old) * y[i];
        for (std::size_t k = 0; k < d; ++k) w[k] += step * x[k];
        w[d] += step;
      }
    }
    fit.iterations = iter + 1;
    if (pg_max - pg_min <= options.tol) {
      fit.converged = true;
      break;
    }
  }
  fit.b = w[d];
  w.pop_back();
  fit.w = std::move(w);
  return fit;
}

}  // namespace

std::vector<double> LinearModel::decision_values(std::span<const double> x) const {
  if (x.size() != feature_names.size()) throw std::invalid_argument("feature vector has wrong dimension");
  std::vector<double> out;
  out.reserve(weights.size());
  for (std::size_t r = 0; r < weights.size(); ++r) out.push_back(dot(weights[r], x) + bias[r]);
  return out;
}

std::string LinearModel::predict_class(std::span<const double> x) const {
  if (kind != Kind::Classifier) throw std::logic_error("predict_class on a regressor");
  const auto v = decision_values(x);
  if (classes.size() == 2) return v[0] > 0.0 ? classes[1] : classes[0];
  return classes[argmax(v)];
}

double LinearModel::predict_value(std::span<const double> x) const {
  if (kind != Kind::Regressor) throw std::logic_error("predict_value on a classifier");
  return decision_values(x)[0];
}

std::size_t argmax(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("argmax of empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

LinearModel train_svc(const TrainingData& data, std::span<const std::string> labels, const SvcOptions& options,
                      std::span<const std::string> class_order) {
  if (!(options.C > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (labels.size() != data.rows.size()) throw std::invalid_argument("labels and rows differ in length");
  check_rows(data);

  const std::set<std::string> present(labels.begin(), labels.end());
  if (present.size() < 2) throw std::invalid_argument("classifier needs at least two classes");

  LinearModel model;
  model.kind = LinearModel::Kind::Classifier;
  model.feature_names = data.feature_names;
  if (class_order.empty()) {
    model.classes.assign(present.begin(), present.end());
  } else {
    model.classes.assign(class_order.begin(), class_order.end());
    for (const auto& l : present) {
      if (std::find(model.classes.begin(), model.classes.end(), l) == model.classes.end()) {
        throw std::invalid_argument("label '" + l + "' is not in the class list");
      }
    }
  }

  std::vector<std::string> positives;
  if (model.classes.size() == 2) positives.push_back(model.classes[1]);
  else positives = model.classes;

  for (const auto& positive : positives) {
    std::vector<double> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == positive ? 1.0 : -1.0;
    auto fit = fit_binary(data, y, options);
    model.weights.push_back(std::move(fit.w));
    model.bias.push_back(fit.b);
    model.converged = model.converged && fit.converged;
    model.iterations = std::max(model.iterations, fit.iterations);
  }
  return model;
}

LinearModel train_svr(const TrainingData& data, std::span<const double> targets, const SvrOptions& options) {
  if (!(options.C > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(options.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (targets.size() != data.rows.size()) throw std::invalid_argument("targets and rows differ in length");
  if (data.rows.size() < 2) throw std::invalid_argument("regressor needs at least two samples");
  check_rows(data);
  for (const double t : targets) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite regression target");
  }

  const std::size_t n = data.rows.size();
  const std::size_t m = 2 * n;
  const double C = options.C;
  constexpr double kTau = 1e-12;

  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      kernel[i * n + j] = kernel[j * n + i] = dot(data.rows[i], data.rows[j]);
    }
  }
  auto K = [&](std::size_t a, std::size_t b) { return kernel[(a % n) * n + (b % n)]; };

  // Variables t < n carry alpha, t >= n carry alpha*.
  std::vector<double> y(m), alpha(m, 0.0), grad(m), qd(m);
  for (std::size_t t = 0; t < n; ++t) {
    y[t] = 1.0;
    y[t + n] = -1.0;
    grad[t] = options.epsilon - targets[t];
    grad[t + n] = options.epsilon + targets[t];
  }
  for (std::size_t t = 0; t < m; ++t) qd[t] = K(t, t);
  auto at_upper = [&](std::size_t t) { return alpha[t] >= C; };
  auto at_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };
  auto Q = [&](std::size_t a, std::size_t b) { return y[a] * y[b] * K(a, b); };

  LinearModel model;
  model.kind = LinearModel::Kind::Regressor;
  model.feature_names = data.feature_names;
  model.converged = false;

  std::size_t iter = 0;
  for (; iter < options.max_iter; ++iter) {
    // Second-order working set selection.
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t i = m;
    for (std::size_t t = 0; t < m; ++t) {
      if (y[t] > 0.0) {
        if (!at_upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i = t;
        }
      } else if (!at_lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i = t;
      }
    }
    std::size_t j = m;
    double best = std::numeric_limits<double>::infinity();
    if (i < m) {
      for (std::size_t t = 0; t < m; ++t) {
        double diff = 0.0;
        double quad = 0.0;
        if (y[t] > 0.0) {
          if (at_lower(t)) continue;
          gmax2 = std::max(gmax2, grad[t]);
          diff = gmax + grad[t];
          quad = qd[i] + qd[t] - 2.0 * y[i] * y[i] * y[t] * K(i, t);
        } else {
          if (at_upper(t)) continue;
          gmax2 = std::max(gmax2, -grad[t]);
          diff = gmax - grad[t];
          quad = qd[i] + qd[t] + 2.0 * y[i] * y[i] * y[t] * K(i, t);
        }
        if (diff > 0.0) {
          const double obj = -(diff * diff) / (quad > 0.0 ? quad : kTau);
          if (obj <= best) {
            best = obj;
            j = t;
          }
        }
      }
    }
    if (i == m || j == m || gmax + gmax2 < options.tol) {
      model.converged = true;
      break;
    }

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double qij = Q(i, j);
    if (y[i] != y[j]) {
      double quad = qd[i] + qd[j] + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = qd[i] + qd[j] - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < m; ++t) grad[t] += Q(i, t) * di + Q(j, t) * dj;
  }
  model.iterations = iter;

  // Bias from free variables, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < m; ++t) {
    const double yg = y[t] * grad[t];
    if (at_upper(t)) {
      if (y[t] < 0.0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (y[t] > 0.0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;

  std::vector<double> w(data.dimension(), 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double coef = alpha[s] - alpha[s + n];
    if (coef == 0.0) continue;
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += coef * data.rows[s][k];
  }
  model.weights.push_back(std::move(w));
  model.bias.push_back(-rho);
  const auto [lo, hi] = std::minmax_element(targets.begin(), targets.end());
  model.target_min = *lo;
  model.target_max = *hi;
  return model;
}

nlohmann::json to_json(const LinearModel& model) {
  return {{"kind", model.kind == LinearModel::Kind::Classifier ? "classifier" : "regressor"},
          {"feature_names", model.feature_names},
          {"classes", model.classes},
          {"weights", model.weights},
          {"bias", model.bias},
          {"target_min", model.target_min},
          {"target_max", model.target_max},
          {"converged", model.converged},
          {"iterations", model.iterations}};
}

LinearModel linear_model_from_json(const nlohmann::json& doc) {
  LinearModel model;
  const auto kind = doc.at("kind").get<std::string>();
  if (kind == "classifier") model.kind = LinearModel::Kind::Classifier;
  else if (kind == "regressor") model.kind = LinearModel::Kind::Regressor;
  else throw std::invalid_argument("unknown model kind '" + kind + "'");
  model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
  model.classes = doc.at("classes").get<std::vector<std::string>>();
  model.weights = doc.at("weights").get<std::vector<std::vector<double>>>();
  model.bias = doc.at("bias").get<std::vector<double>>();
  model.target_min = doc.at("target_min").get<double>();
  model.target_max = doc.at("target_max").get<double>();
  model.converged = doc.at("converged").get<bool>();
  model.iterations = doc.at("iterations").get<std::size_t>();
  if (model.weights.size() != model.bias.size()) throw std::invalid_argument("model weights and bias differ");
  for (const auto& row : model.weights) {
    if (row.size() != model.feature_names.size()) throw std::invalid_argument("model weight row has wrong size");
  }
  return model;
}

}  // namespace speechmark
