#include <cstdlib>

#include <gtest/gtest.h>

#include "speechmark/config.hpp"
#include "speechmark/error.hpp"

namespace sm = speechmark;

TEST(Config, DefaultsAreValid) {
  const sm::PipelineConfig config;
  EXPECT_NO_THROW(config.validate());
  EXPECT_EQ(config.pause_threshold_s, 0.3);
  EXPECT_EQ(config.min_chunk_words, 200u);
  EXPECT_EQ(config.svc_C, 0.1);
  EXPECT_EQ(config.svc_max_iter, 50000u);
  EXPECT_EQ(config.svc_tol, 1e-4);
  EXPECT_EQ(config.svr_epsilon, 0.1);
}

TEST(Config, NegativePauseThresholdIsRejected) {
  try {
    sm::parse_config("pause_threshold_s = -1\n");
    FAIL() << "expected ConfigError";
  } catch (const sm::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("pause_threshold_s"), std::string::npos);
  }
}

TEST(Config, SectionsPrefixKeys) {
  const auto config = sm::parse_config(
      "# run settings\n"
      "seed = 7\n"
      "task = subtype\n"
      "[svc]\n"
      "C = 2.5   # inline comment\n"
      "[svr]\n"
      "epsilon = 0.5\n");
  EXPECT_EQ(config.seed, 7u);
  EXPECT_EQ(config.task, sm::Task::Subtype);
  EXPECT_EQ(config.svc_C, 2.5);
  EXPECT_EQ(config.svr_epsilon, 0.5);
}

TEST(Config, UnknownKeyAndBadValues) {
  EXPECT_THROW(sm::parse_config("colour = red\n"), sm::ConfigError);
  EXPECT_THROW(sm::parse_config("min_chunk_words = many\n"), sm::ConfigError);
  EXPECT_THROW(sm::parse_config("quantiles = 50,25\n"), sm::ConfigError);
  EXPECT_THROW(sm::parse_config("task = dementia\n"), sm::ConfigError);
  EXPECT_THROW(sm::parse_config("svc.C = 0\n"), sm::ConfigError);
}

TEST(Config, TextRoundTrip) {
  sm::PipelineConfig config;
  config.seed = 11;
  config.mattr_windows = {5, 20};
  config.quantiles = {20, 80};
  config.svr_C = 3.25;
  config.task = sm::Task::Aq;
  config.out_dir = "some dir/out";
  const auto again = sm::parse_config(sm::to_config_text(config));
  EXPECT_EQ(sm::to_config_text(again), sm::to_config_text(config));
  EXPECT_EQ(again.mattr_windows, config.mattr_windows);
  EXPECT_EQ(again.out_dir, config.out_dir);
}

TEST(Config, EveryKeyIsDocumented) {
  std::set<std::string> names;
  for (const auto& key : sm::config_keys()) names.insert(key.name);
  for (const auto* expected : {"pause_threshold_s", "min_chunk_words", "mattr_windows", "quantiles", "svc.C",
                               "svc.max_iter", "svc.tol", "svr.C", "svr.epsilon", "svr.max_iter", "seed", "jobs",
                               "task", "lexicon", "healthy_dir", "dataset_dir", "out_dir"}) {
    EXPECT_TRUE(names.contains(expected)) << expected;
  }
  sm::PipelineConfig config;
  for (const auto& key : sm::config_keys()) EXPECT_NO_THROW(sm::set_config_value(config, key.name, key.default_value));
}

TEST(Config, SeedFromEnvironment) {
  sm::PipelineConfig config;
  ::setenv("SPEECHMARK_SEED", "1234", 1);
  sm::apply_environment(config);
  ::unsetenv("SPEECHMARK_SEED");
  EXPECT_EQ(config.seed, 1234u);
  EXPECT_EQ(config.loso_options().svc.seed, 1234u);
}
