#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

// Lexical richness measures over a token sequence. Tokens are compared
// as-is; callers standardize beforehand.
namespace speechmark::lexical {

inline constexpr std::size_t kHddSampleSize = 42;
inline constexpr double kMtldThreshold = 0.72;
inline constexpr int kGzipLevel = 6;

/// Distinct tokens over total tokens. Zero for empty input.
double ttr(std::span<const std::string> tokens);

/// Mean TTR over all windows of `window` consecutive tokens. When the window
/// is at least as long as the text there is a single window and the result
/// equals ttr().
double mattr(std::span<const std::string> tokens, std::size_t window);

/// Hypergeometric diversity: mean over types of the probability that a
/// random draw of `sample_size` tokens (without replacement) contains the
/// type. Shorter texts use their full length as the sample size.
double hdd(std::span<const std::string> tokens, std::size_t sample_size = kHddSampleSize);

/// Factor count of a single MTLD pass, including the partial factor of the
/// remainder.
double mtld_factors(std::span<const std::string> tokens, double threshold = kMtldThreshold);

/// Mean of the forward and backward MTLD passes. A pass with no factor
/// (every word unique) counts as a single factor, giving the text length.
double mtld(std::span<const std::string> tokens, double threshold = kMtldThreshold);

/// Shannon entropy (bits) of the token frequency distribution.
double entropy_bits(std::span<const std::string> tokens);

/// Compressed length over raw length of the UTF-8 bytes, using gzip framing
/// at a fixed compression level.
double gzip_ratio(std::string_view text, int level = kGzipLevel);

}  // namespace speechmark::lexical
