#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

namespace speechmark::testing {

std::size_t levenshtein_recursive(std::span<const std::string> a, std::span<const std::string> b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> lev = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
    const std::size_t d = std::min({lev(i - 1, j) + 1, lev(i, j - 1) + 1, lev(i - 1, j - 1) + cost});
    memo[{i, j}] = d;
    return d;
  };
  return lev(a.size(), b.size());
}

std::size_t min_cost_by_enumeration(std::span<const std::string> a, std::span<const std::string> b) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::function<void(std::size_t, std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j,
                                                                         std::size_t cost) {
    if (cost >= best) return;
    if (i == a.size() && j == b.size()) {
      best = cost;
      return;
    }
    if (i < a.size() && j < b.size()) walk(i + 1, j + 1, cost + (a[i] == b[j] ? 0 : 1));
    if (i < a.size()) walk(i + 1, j, cost + 1);
    if (j < b.size()) walk(i, j + 1, cost + 1);
  };
  walk(0, 0, 0);
  return best;
}

std::vector<TickGap> gap_scan(std::span<const TickToken> tokens, std::int64_t total, std::int64_t threshold) {
  std::vector<std::int64_t> edges{0};
  for (const auto& t : tokens) {
    edges.push_back(t.start);
    edges.push_back(t.end);
  }
  edges.push_back(total);
  std::vector<TickGap> gaps;
  for (std::size_t k = 0; k + 1 < edges.size(); k += 2) {
    if (edges[k + 1] - edges[k] > threshold) gaps.push_back({edges[k], edges[k + 1]});
  }
  return gaps;
}

double naive_ttr(std::span<const std::string> tokens) {
  const std::set<std::string> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

double naive_mattr(std::span<const std::string> tokens, std::size_t window) {
  if (window >= tokens.size()) return naive_ttr(tokens);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + window <= tokens.size(); ++i) {
    sum += naive_ttr(tokens.subspan(i, window));
    ++count;
  }
  return sum / static_cast<double>(count);
}

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double hdd_lgamma(std::span<const std::string> tokens, std::size_t sample_size) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  const double n = static_cast<double>(tokens.size());
  const double s = static_cast<double>(std::min(sample_size, tokens.size()));
  double total = 0.0;
  for (const auto& [type, c] : counts) {
    const double k = static_cast<double>(c);
    const double absent = n - k < s ? 0.0 : std::exp(log_choose(n - k, s) - log_choose(n, s));
    total += (1.0 - absent) / s;
  }
  return total;
}

namespace {

double mtld_pass(const std::vector<std::string>& tokens, double threshold) {
  double factors = 0.0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::set<std::string> types(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    const double ttr = static_cast<double>(types.size()) / static_cast<double>(i + 1 - start);
    if (ttr <= threshold) {
      factors += 1.0;
      start = i + 1;
    } else if (i + 1 == tokens.size()) {
      factors += (1.0 - ttr) / (1.0 - threshold);
    }
  }
  if (factors == 0.0) factors = 1.0;
  return static_cast<double>(tokens.size()) / factors;
}

}  // namespace

double naive_mtld(std::span<const std::string> tokens, double threshold) {
  std::vector<std::string> forward(tokens.begin(), tokens.end());
  std::vector<std::string> backward(tokens.rbegin(), tokens.rend());
  return (mtld_pass(forward, threshold) + mtld_pass(backward, threshold)) / 2.0;
}

double naive_entropy_bits(std::span<const std::string> tokens) {
  std::unordered_map<std::string, double> counts;
  for (const auto& t : tokens) counts[t] += 1.0;
  double h = 0.0;
  for (const auto& [type, c] : counts) {
    const double p = c / static_cast<double>(tokens.size());
    h += p * std::log(1.0 / p) / std::log(2.0);
  }
  return h;
}

double quantile_by_rank(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double position = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(position));
  const auto hi = static_cast<std::size_t>(std::ceil(position));
  return values[lo] + (position - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<double> primal_svc(const std::vector<std::vector<double>>& x, std::span<const double> y, double C,
                               std::size_t iterations) {
  const std::size_t n = x.size();
  const std::size_t d = x.front().size() + 1;
  auto row = [&](std::size_t i, std::size_t k) { return k + 1 == d ? 1.0 : x[i][k]; };
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) frob += row(i, k) * row(i, k);
  }
  const double step = 1.0 / (1.0 + 2.0 * C * frob);
  std::vector<double> w(d, 0.0), grad(d);
  for (std::size_t it = 0; it < iterations; ++it) {
    grad = w;
    for (std::size_t i = 0; i < n; ++i) {
      double margin = 0.0;
      for (std::size_t k = 0; k < d; ++k) margin += w[k] * row(i, k);
      const double slack = 1.0 - y[i] * margin;
      if (slack > 0.0) {
        for (std::size_t k = 0; k < d; ++k) grad[k] -= 2.0 * C * slack * y[i] * row(i, k);
      }
    }
    for (std::size_t k = 0; k < d; ++k) w[k] -= step * grad[k];
  }
  return w;
}

double svr_objective(const std::vector<std::vector<double>>& x, std::span<const double> y, std::span<const double> w,
                     double b, double C, double epsilon) {
  double obj = 0.0;
  for (const double v : w) obj += 0.5 * v * v;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = b;
    for (std::size_t k = 0; k < w.size(); ++k) f += w[k] * x[i][k];
    obj += C * std::max(0.0, std::abs(y[i] - f) - epsilon);
  }
  return obj;
}

double binomial_two_sided_p(std::size_t k, std::size_t n, double p) {
  auto pmf = [&](std::size_t i) {
    const double nn = static_cast<double>(n);
    const double ii = static_cast<double>(i);
    return std::exp(log_choose(nn, ii) + ii * std::log(p) + (nn - ii) * std::log(1.0 - p));
  };
  const double observed = pmf(k);
  double total = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double q = pmf(i);
    if (q <= observed * (1.0 + 1e-7)) total += q;
  }
  return std::min(1.0, total);
}

}  // namespace speechmark::testing
