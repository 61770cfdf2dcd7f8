#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "speechmark/lexical.hpp"
#include "speechmark/stats.hpp"

namespace sm = speechmark;
namespace lx = speechmark::lexical;
namespace st = speechmark::testing;

namespace {

std::vector<std::string> unique_words(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("u" + std::to_string(i));
  return out;
}

}  // namespace

TEST(Ttr, Definition) {
  const std::vector<std::string> words{"a", "b", "a"};
  EXPECT_DOUBLE_EQ(lx::ttr(words), 2.0 / 3.0);
  EXPECT_EQ(lx::ttr({}), 0.0);
}

TEST(Mattr, WindowAtLeastTextLengthEqualsTtr) {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 200; ++trial) {
    const auto words = st::random_words(rng, 1 + trial % 40, 15);
    EXPECT_EQ(lx::mattr(words, words.size()), lx::ttr(words));
    EXPECT_EQ(lx::mattr(words, words.size() + 7), lx::ttr(words));
  }
}

TEST(Mattr, MatchesNaiveWindows) {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 200; ++trial) {
    const auto words = st::random_words(rng, 30 + trial, 25);
    for (const std::size_t w : {1u, 5u, 10u, 25u, 50u}) {
      EXPECT_NEAR(lx::mattr(words, w), st::naive_mattr(words, w), 1e-12);
    }
  }
}

TEST(Hdd, MatchesLgammaFormula) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    const auto words = st::random_words(rng, 5 + trial, 30);
    EXPECT_NEAR(lx::hdd(words), st::hdd_lgamma(words), 1e-9) << words.size();
  }
}

TEST(Hdd, AllUniqueIsOne) { EXPECT_NEAR(lx::hdd(unique_words(80)), 1.0, 1e-12); }

TEST(Mtld, MatchesNaivePasses) {
  std::mt19937_64 rng(304);
  for (int trial = 0; trial < 200; ++trial) {
    const auto words = st::random_words(rng, 10 + trial, 40);
    EXPECT_NEAR(lx::mtld(words), st::naive_mtld(words), 1e-9);
  }
}

TEST(Mtld, AllUniqueReturnsLength) { EXPECT_DOUBLE_EQ(lx::mtld(unique_words(50)), 50.0); }

TEST(Entropy, UniformDistribution) {
  for (const std::size_t n : {1u, 2u, 7u, 64u}) {
    const auto once = unique_words(n);
    auto words = once;
    words.insert(words.end(), once.begin(), once.end());
    EXPECT_NEAR(lx::entropy_bits(words), std::log2(static_cast<double>(n)), 1e-12);
  }
}

TEST(Entropy, MatchesNaive) {
  std::mt19937_64 rng(305);
  for (int trial = 0; trial < 100; ++trial) {
    const auto words = st::random_words(rng, 20 + trial, 30);
    EXPECT_NEAR(lx::entropy_bits(words), st::naive_entropy_bits(words), 1e-12);
  }
}

TEST(GzipRatio, RepetitiveTextCompressesBetter) {
  std::string repeated;
  for (int i = 0; i < 100; ++i) repeated += i ? " x" : "x";
  std::mt19937_64 rng(306);
  std::uniform_int_distribution<int> letter('a', 'z');
  std::string random_text;
  for (int i = 0; i < 100; ++i) {
    if (i) random_text += ' ';
    for (int k = 0; k < 6; ++k) random_text += static_cast<char>(letter(rng));
  }
  EXPECT_GT(lx::gzip_ratio(repeated), 0.0);
  EXPECT_LT(lx::gzip_ratio(repeated), lx::gzip_ratio(random_text));
}

TEST(GzipRatio, Deterministic) { EXPECT_EQ(lx::gzip_ratio("the cat sat"), lx::gzip_ratio("the cat sat")); }

TEST(Lexical, OrderFreeMetricsIgnorePermutation) {
  std::mt19937_64 rng(307);
  std::size_t mattr_changed = 0;
  std::size_t mtld_changed = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    auto words = st::random_words(rng, 120, 40);
    const double ttr = lx::ttr(words), hdd = lx::hdd(words), info = lx::entropy_bits(words);
    const double mattr = lx::mattr(words, 10), mtld = lx::mtld(words);
    std::shuffle(words.begin(), words.end(), rng);
    EXPECT_EQ(lx::ttr(words), ttr);
    EXPECT_NEAR(lx::hdd(words), hdd, 1e-12);
    EXPECT_NEAR(lx::entropy_bits(words), info, 1e-12);
    mattr_changed += lx::mattr(words, 10) != mattr ? 1 : 0;
    mtld_changed += lx::mtld(words) != mtld ? 1 : 0;
  }
  EXPECT_GT(mattr_changed, trials * 9 / 10);
  EXPECT_GT(mtld_changed, trials * 9 / 10);
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> two{0.4, 0.6};
  EXPECT_DOUBLE_EQ(sm::stats::quantile(two, 0.5), 0.5);
  std::mt19937_64 rng(308);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs(1 + trial % 17);
    for (auto& x : xs) x = u(rng);
    for (const double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.95, 1.0}) {
      EXPECT_NEAR(sm::stats::quantile(xs, p), st::quantile_by_rank(xs, p), 1e-12);
    }
  }
}

TEST(Stats, PearsonAndMae) {
  const std::vector<double> truth{1, 2, 3, 4};
  const std::vector<double> shifted{3.5, 4.5, 5.5, 6.5};
  EXPECT_NEAR(*sm::stats::pearson(shifted, truth), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(sm::stats::mean_absolute_error(shifted, truth), 2.5);
  const std::vector<double> flat{1, 1, 1, 1};
  EXPECT_FALSE(sm::stats::pearson(flat, truth).has_value());
}

TEST(Stats, SampleStddev) {
  const std::vector<double> xs{1.0, 3.0};
  EXPECT_DOUBLE_EQ(sm::stats::sample_stddev(xs), std::sqrt(2.0));
}
