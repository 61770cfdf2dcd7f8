#pragma once

#include <optional>
#include <span>

namespace speechmark::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator). Requires n >= 2.
double sample_stddev(std::span<const double> xs);

/// Quantile by linear interpolation between closest ranks, p in [0, 1].
/// Throws std::invalid_argument on empty input.
double quantile(std::span<const double> xs, double p);

/// Pearson correlation; nullopt when either side has zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

double mean_absolute_error(std::span<const double> predicted, std::span<const double> truth);

/// Cosine similarity; nullopt if either vector has zero norm.
std::optional<double> cosine(std::span<const double> a, std::span<const double> b);

}  // namespace speechmark::stats
