#include "speechmark/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "speechmark/error.hpp"
#include "speechmark/tables.hpp"

namespace speechmark {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                    std::string(expected));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, std::string_view expected) {
  value = trim(value);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) bad_value(key, value, expected);
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
  std::vector<int> out;
  while (!trim(value).empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_number<int>(key, value.substr(0, comma), "an integer list"));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  if (out.empty()) bad_value(key, value, "a non-empty integer list");
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    const PipelineConfig d;
    return std::vector<ConfigKey>{
        {"pause_threshold_s", format_number(d.pause_threshold_s), "silence longer than this (seconds) is a pause"},
        {"min_chunk_words", std::to_string(d.min_chunk_words), "minimum words per chunk"},
        {"mattr_windows", join_ints(d.mattr_windows), "MATTR window sizes"},
        {"quantiles", join_ints(d.quantiles), "pause length/distance quantiles (percent)"},
        {"svc.C", format_number(d.svc_C), "SVC regularization strength"},
        {"svc.max_iter", std::to_string(d.svc_max_iter), "SVC passes over the data"},
        {"svc.tol", format_number(d.svc_tol), "SVC projected-gradient stopping tolerance"},
        {"svr.C", format_number(d.svr_C), "SVR regularization strength"},
        {"svr.epsilon", format_number(d.svr_epsilon), "SVR insensitive-tube half width"},
        {"svr.max_iter", std::to_string(d.svr_max_iter), "SVR solver iterations"},
        {"seed", std::to_string(d.seed), "solver seed (SPEECHMARK_SEED overrides)"},
        {"jobs", std::to_string(d.jobs), "worker threads"},
        {"task", std::string(to_string(d.task)), "binary, subtype or aq"},
        {"lexicon", "", "pronunciation lexicon (bundled when empty)"},
        {"healthy_dir", "", "healthy reference recordings"},
        {"dataset_dir", "", "recordings to classify"},
        {"out_dir", "", "output directory for run"},
    };
  }();
  return keys;
}

void set_config_value(PipelineConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = unquote(trim(raw));
  if (key == "pause_threshold_s") c.pause_threshold_s = parse_number<double>(key, value, "a number");
  else if (key == "min_chunk_words") c.min_chunk_words = parse_number<std::size_t>(key, value, "an integer");
  else if (key == "mattr_windows") c.mattr_windows = parse_int_list(key, value);
  else if (key == "quantiles") c.quantiles = parse_int_list(key, value);
  else if (key == "svc.C") c.svc_C = parse_number<double>(key, value, "a number");
  else if (key == "svc.max_iter") c.svc_max_iter = parse_number<std::size_t>(key, value, "an integer");
  else if (key == "svc.tol") c.svc_tol = parse_number<double>(key, value, "a number");
  else if (key == "svr.C") c.svr_C = parse_number<double>(key, value, "a number");
  else if (key == "svr.epsilon") c.svr_epsilon = parse_number<double>(key, value, "a number");
  else if (key == "svr.max_iter") c.svr_max_iter = parse_number<std::size_t>(key, value, "an integer");
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value, "an unsigned integer");
  else if (key == "jobs") c.jobs = parse_number<std::size_t>(key, value, "an integer");
  else if (key == "task") {
    const auto task = parse_task(value);
    if (!task) bad_value(key, value, "binary, subtype or aq");
    c.task = *task;
  } else if (key == "lexicon") c.lexicon = std::string(value);
  else if (key == "healthy_dir") c.healthy_dir = std::string(value);
  else if (key == "dataset_dir") c.dataset_dir = std::string(value);
  else if (key == "out_dir") c.out_dir = std::string(value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (!(pause_threshold_s > 0.0)) fail("pause_threshold_s", "must be positive");
  if (min_chunk_words == 0) fail("min_chunk_words", "must be at least 1");
  std::set<int> seen;
  for (const int w : mattr_windows) {
    if (w <= 0) fail("mattr_windows", "windows must be positive");
    if (!seen.insert(w).second) fail("mattr_windows", "windows must be distinct");
  }
  if (mattr_windows.empty()) fail("mattr_windows", "at least one window is required");
  if (quantiles.empty()) fail("quantiles", "at least one quantile is required");
  for (std::size_t i = 0; i < quantiles.size(); ++i) {
    if (quantiles[i] <= 0 || quantiles[i] >= 100) fail("quantiles", "quantiles must lie in (0, 100)");
    if (i > 0 && quantiles[i] <= quantiles[i - 1]) fail("quantiles", "quantiles must be strictly increasing");
  }
  if (!(svc_C > 0.0)) fail("svc.C", "must be positive");
  if (svc_max_iter == 0) fail("svc.max_iter", "must be at least 1");
  if (!(svc_tol > 0.0)) fail("svc.tol", "must be positive");
  if (!(svr_C > 0.0)) fail("svr.C", "must be positive");
  if (!(svr_epsilon >= 0.0)) fail("svr.epsilon", "must be non-negative");
  if (svr_max_iter == 0) fail("svr.max_iter", "must be at least 1");
  if (jobs == 0) fail("jobs", "must be at least 1");
}

LosoOptions PipelineConfig::loso_options() const {
  LosoOptions o;
  o.svc = {svc_C, svc_max_iter, svc_tol, seed};
  o.svr = {svr_C, svr_epsilon, svr_max_iter, svc_tol};
  o.jobs = jobs;
  return o;
}

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("config line " + std::to_string(number) + ": malformed section");
      section = std::string(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key(trim(body.substr(0, eq)));
    if (!section.empty()) key = section + "." + key;
    set_config_value(config, key, body.substr(eq + 1));
  }
  config.validate();
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const PipelineConfig& c) {
  std::ostringstream out;
  out << "pause_threshold_s = " << format_number(c.pause_threshold_s) << "\n"
      << "min_chunk_words = " << c.min_chunk_words << "\n"
      << "mattr_windows = [" << join_ints(c.mattr_windows) << "]\n"
      << "quantiles = [" << join_ints(c.quantiles) << "]\n"
      << "seed = " << c.seed << "\n"
      << "jobs = " << c.jobs << "\n"
      << "task = \"" << to_string(c.task) << "\"\n"
      << "lexicon = \"" << c.lexicon.string() << "\"\n"
      << "healthy_dir = \"" << c.healthy_dir.string() << "\"\n"
      << "dataset_dir = \"" << c.dataset_dir.string() << "\"\n"
      << "out_dir = \"" << c.out_dir.string() << "\"\n"
      << "\n[svc]\n"
      << "C = " << format_number(c.svc_C) << "\n"
      << "max_iter = " << c.svc_max_iter << "\n"
      << "tol = " << format_number(c.svc_tol) << "\n"
      << "\n[svr]\n"
      << "C = " << format_number(c.svr_C) << "\n"
      << "epsilon = " << format_number(c.svr_epsilon) << "\n"
      << "max_iter = " << c.svr_max_iter << "\n";
  return out.str();
}

void apply_environment(PipelineConfig& config) {
  if (const char* seed = std::getenv("SPEECHMARK_SEED"); seed != nullptr && *seed != '\0') {
    config.seed = parse_number<std::uint64_t>("SPEECHMARK_SEED", seed, "an unsigned integer");
  }
}

}  // namespace speechmark
