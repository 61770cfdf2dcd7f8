#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speechmark/learn.hpp"

namespace speechmark {

/// Every numeric constant of a run plus its paths. Loaded from a key/value
/// file (`key = value`, `#` comments, `[section]` prefixes), then overridden
/// by flags and SPEECHMARK_SEED.
struct PipelineConfig {
  double pause_threshold_s = 0.300;
  std::size_t min_chunk_words = 200;
  std::vector<int> mattr_windows{10, 25, 50};
  std::vector<int> quantiles{10, 25, 50, 75, 95};
  double svc_C = 0.1;
  std::size_t svc_max_iter = 50000;
  double svc_tol = 1e-4;
  double svr_C = 0.1;
  double svr_epsilon = 0.1;
  std::size_t svr_max_iter = 50000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  Task task = Task::Binary;
  std::filesystem::path lexicon;
  std::filesystem::path healthy_dir;
  std::filesystem::path dataset_dir;
  std::filesystem::path out_dir;

  /// Throws ConfigError naming the first invalid key.
  void validate() const;
  LosoOptions loso_options() const;
};

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string description;
};

/// All recognized keys with their defaults, in documentation order.
const std::vector<ConfigKey>& config_keys();

/// Applies one `key = value` assignment. Throws ConfigError for unknown keys
/// or unparsable values.
void set_config_value(PipelineConfig& config, std::string_view key, std::string_view value);

PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Serializes every key, suitable for parse_config.
std::string to_config_text(const PipelineConfig& config);

/// Applies SPEECHMARK_SEED when set in the environment.
void apply_environment(PipelineConfig& config);

}  // namespace speechmark
