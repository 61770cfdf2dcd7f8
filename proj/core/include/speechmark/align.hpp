#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speechmark/corpus.hpp"

namespace speechmark {

enum class EditKind { Match, Substitute, DeleteAcoustic, InsertClean };

std::string_view to_string(EditKind kind);

/// One step of an edit script turning the acoustic sequence into the clean
/// sequence. Match/Substitute carry both indices, DeleteAcoustic only the
/// acoustic index, InsertClean only the clean index.
struct AlignOp {
  EditKind kind = EditKind::Match;
  std::optional<std::size_t> acoustic_index;
  std::optional<std::size_t> clean_index;

  bool operator==(const AlignOp&) const = default;
};

struct WordTiming {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const WordTiming&) const = default;
};

struct AlignedTranscript {
  std::vector<AlignOp> ops;
  /// Indexed by clean word; present iff the word is matched or substituted.
  std::vector<std::optional<WordTiming>> word_timings;
  /// Acoustic tokens left unmatched (the DeleteAcoustic indices), ascending.
  std::vector<std::size_t> unmatched_acoustic;
};

/// Above this many DP cells the backtrace switches from a full table to
/// checkpointed rows (O(m * sqrt(n)) memory); results are identical.
inline constexpr std::size_t kFullTableCellLimit = std::size_t{1} << 22;

namespace detail {

// Fills rows (lo, hi] of the Levenshtein table starting from row `lo`,
// which must already be in `rows[0]`.
template <typename T>
void fill_rows(std::span<const T> a, std::span<const T> b, std::size_t lo, std::size_t hi,
               std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t m = b.size();
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    auto& prev = rows[i - 1 - lo];
    auto& cur = rows[i - lo];
    cur.resize(m + 1);
    cur[0] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u);
      const std::uint32_t up = prev[j] + 1;
      const std::uint32_t left = cur[j - 1] + 1;
      cur[j] = std::min({diag, up, left});
    }
  }
}

}  // namespace detail

/// Minimum unit-cost edit script from `a` (acoustic side) to `b` (clean side).
/// Ties are broken while backtracing from the end, preferring Match, then
/// Substitute, then DeleteAcoustic, then InsertClean.
template <typename T>
std::vector<AlignOp> edit_script(std::span<const T> a, std::span<const T> b,
                                 std::size_t full_table_limit = kFullTableCellLimit) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  std::size_t block = n == 0 ? 1 : n;
  if ((n + 1) * (m + 1) > full_table_limit && n > 1) {
    block = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  }

  // Checkpoint rows at multiples of `block`; a single block needs only row 0.
  std::vector<std::vector<std::uint32_t>> checkpoints;
  if (block >= n) {
    checkpoints.emplace_back(m + 1);
    for (std::size_t j = 0; j <= m; ++j) checkpoints[0][j] = static_cast<std::uint32_t>(j);
  } else {
    std::vector<std::vector<std::uint32_t>> rows(2);
    rows[0].resize(m + 1);
    for (std::size_t j = 0; j <= m; ++j) rows[0][j] = static_cast<std::uint32_t>(j);
    checkpoints.push_back(rows[0]);
    for (std::size_t i = 1; i <= n; ++i) {
      detail::fill_rows(a, b, i - 1, i, rows);
      if (i % block == 0) checkpoints.push_back(rows[1]);
      std::swap(rows[0], rows[1]);
    }
  }

  std::vector<AlignOp> ops;
  ops.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  std::vector<std::vector<std::uint32_t>> rows;
  while (i > 0) {
    const std::size_t lo = ((i - 1) / block) * block;
    const std::size_t hi = std::min(lo + block, n);
    rows.assign(hi - lo + 1, {});
    rows[0] = checkpoints[lo / block];
    detail::fill_rows(a, b, lo, hi, rows);
    while (i > lo) {
      const auto& cur = rows[i - lo];
      if (j == 0) {
        ops.push_back({EditKind::DeleteAcoustic, i - 1, std::nullopt});
        --i;
        continue;
      }
      const auto& prev = rows[i - 1 - lo];
      const std::uint32_t here = cur[j];
      const bool equal = a[i - 1] == b[j - 1];
      if (equal && prev[j - 1] == here) {
        ops.push_back({EditKind::Match, i - 1, j - 1});
        --i;
        --j;
      } else if (!equal && prev[j - 1] + 1 == here) {
        ops.push_back({EditKind::Substitute, i - 1, j - 1});
        --i;
        --j;
      } else if (prev[j] + 1 == here) {
        ops.push_back({EditKind::DeleteAcoustic, i - 1, std::nullopt});
        --i;
      } else {
        ops.push_back({EditKind::InsertClean, std::nullopt, j - 1});
        --j;
      }
    }
  }
  while (j > 0) {
    ops.push_back({EditKind::InsertClean, std::nullopt, j - 1});
    --j;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

/// Levenshtein distance with two rolling rows.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  const std::size_t m = b.size();
  std::vector<std::size_t> prev(m + 1);
  std::vector<std::size_t> cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

/// Number of non-Match ops in a script.
std::size_t edit_cost(std::span<const AlignOp> ops);
std::size_t edit_cost(const AlignedTranscript& aligned);

/// Aligns standardized acoustic tokens to standardized clean words and
/// transfers token timings onto matched and substituted words. Throws
/// DataError when either side is empty.
AlignedTranscript align(const AcousticTranscript& acoustic, const CleanTranscript& clean,
                        std::size_t full_table_limit = kFullTableCellLimit);

nlohmann::json to_json(const AlignOp& op);

}  // namespace speechmark
