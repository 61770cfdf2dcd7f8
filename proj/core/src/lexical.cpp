#include "speechmark/lexical.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <zlib.h>

namespace speechmark::lexical {
namespace {

// Ordered so that floating-point sums do not depend on token order.
std::map<std::string_view, std::size_t> type_counts(std::span<const std::string> tokens) {
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  return counts;
}

}  // namespace

double ttr(std::span<const std::string> tokens) {
  if (tokens.empty()) return 0.0;
  std::unordered_set<std::string_view> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

double mattr(std::span<const std::string> tokens, std::size_t window) {
  if (window == 0) throw std::invalid_argument("MATTR window must be positive");
  const std::size_t n = tokens.size();
  if (n == 0) return 0.0;
  if (window >= n) return ttr(tokens);

  std::unordered_map<std::string_view, std::size_t> counts;
  for (std::size_t i = 0; i < window; ++i) ++counts[tokens[i]];
  double sum = static_cast<double>(counts.size());
  for (std::size_t i = window; i < n; ++i) {
    auto out = counts.find(tokens[i - window]);
    if (--out->second == 0) counts.erase(out);
    ++counts[tokens[i]];
    sum += static_cast<double>(counts.size());
  }
  const double windows = static_cast<double>(n - window + 1);
  return sum / windows / static_cast<double>(window);
}

double hdd(std::span<const std::string> tokens, std::size_t sample_size) {
  const std::size_t n = tokens.size();
  if (n == 0) return 0.0;
  const std::size_t s = std::min(sample_size, n);
  double total = 0.0;
  for (const auto& [type, count] : type_counts(tokens)) {
    // P(type absent from the draw) = C(n - count, s) / C(n, s).
    double absent = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
      if (n < s + k + 1) {
        absent = 0.0;
        break;
      }
      absent *= static_cast<double>(n - s - k) / static_cast<double>(n - k);
    }
    total += (1.0 - absent) / static_cast<double>(s);
  }
  return total;
}

double mtld_factors(std::span<const std::string> tokens, double threshold) {
  double factors = 0.0;
  std::unordered_set<std::string_view> types;
  std::size_t count = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++count;
    types.insert(tokens[i]);
    const double segment_ttr = static_cast<double>(types.size()) / static_cast<double>(count);
    if (segment_ttr <= threshold) {
      factors += 1.0;
      types.clear();
      count = 0;
    } else if (i + 1 == tokens.size()) {
      factors += (1.0 - segment_ttr) / (1.0 - threshold);
    }
  }
  return factors;
}

double mtld(std::span<const std::string> tokens, double threshold) {
  const std::size_t n = tokens.size();
  if (n == 0) return 0.0;
  auto pass = [&](std::span<const std::string> seq) {
    double f = mtld_factors(seq, threshold);
    if (f == 0.0) f = 1.0;
    return static_cast<double>(n) / f;
  };
  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  return (pass(tokens) + pass(reversed)) / 2.0;
}

double entropy_bits(std::span<const std::string> tokens) {
  if (tokens.empty()) return 0.0;
  const double n = static_cast<double>(tokens.size());
  double h = 0.0;
  for (const auto& [type, count] : type_counts(tokens)) {
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double gzip_ratio(std::string_view text, int level) {
  if (text.empty()) throw std::invalid_argument("gzip ratio of empty text");
  z_stream stream{};
  if (deflateInit2(&stream, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::vector<unsigned char> out(deflateBound(&stream, static_cast<uLong>(text.size())) + 32);
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(text.data()));
  stream.avail_in = static_cast<uInt>(text.size());
  stream.next_out = out.data();
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&stream, Z_FINISH);
  const auto compressed = stream.total_out;
  deflateEnd(&stream);
  if (rc != Z_STREAM_END) throw std::runtime_error("deflate did not finish");
  return static_cast<double>(compressed) / static_cast<double>(text.size());
}

}  // namespace speechmark::lexical
