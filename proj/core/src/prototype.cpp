#include "speechmark/prototype.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "speechmark/error.hpp"
#include "speechmark/stats.hpp"

namespace speechmark {

std::size_t Prototype::fitted_count() const {
  std::size_t n = 0;
  for (const auto& [name, g] : scores) n += g.fitted() ? 1 : 0;
  return n;
}

Prototype fit_prototype(std::span<const ScoreVector> healthy, const ScoreVocabulary& vocabulary) {
  if (healthy.empty()) throw DataError("prototype fit: no healthy score vectors");
  Prototype proto;
  proto.names = vocabulary.names();
  for (const auto& name : vocabulary.names()) {
    std::vector<double> values;
    for (const auto& v : healthy) {
      if (const auto s = v.get(name)) values.push_back(*s);
    }
    ScoreGaussian g;
    g.n = values.size();
    if (values.size() >= 2) {
      g.mu = stats::mean(values);
      g.sigma = stats::sample_stddev(values);
    }
    proto.scores.emplace(name, g);
  }
  return proto;
}

double distance_feature(std::optional<double> score, const ScoreGaussian& gaussian) {
  if (!score || !gaussian.fitted()) return 1.0;
  const double deviation = std::abs(*score - *gaussian.mu);
  const double sigma = *gaussian.sigma;
  if (!(deviation > sigma)) return 1.0;
  if (sigma == 0.0) return kDegenerateFeatureFloor;
  return std::max(kDegenerateFeatureFloor, sigma / deviation);
}

std::map<std::string, double> transform(const ScoreVector& scores, const Prototype& proto,
                                        const ScoreVocabulary& vocabulary) {
  if (proto.vocabulary_version != kVocabularyVersion) {
    throw DataError("prototype vocabulary version " + std::to_string(proto.vocabulary_version) +
                    " does not match " + std::to_string(kVocabularyVersion));
  }
  if (proto.names != vocabulary.names()) {
    throw DataError("prototype score names do not match the configured vocabulary");
  }
  std::map<std::string, double> out;
  for (const auto& name : vocabulary.names()) {
    const auto it = proto.scores.find(name);
    if (it == proto.scores.end()) throw DataError("prototype has no entry for score " + name);
    out.emplace(name, distance_feature(scores.get(name), it->second));
  }
  return out;
}

nlohmann::json to_json(const Prototype& proto) {
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& name : proto.names) {
    const auto& g = proto.scores.at(name);
    nlohmann::json entry;
    entry["mu"] = g.mu ? nlohmann::json(*g.mu) : nlohmann::json(nullptr);
    entry["sigma"] = g.sigma ? nlohmann::json(*g.sigma) : nlohmann::json(nullptr);
    entry["n"] = g.n;
    scores[name] = std::move(entry);
  }
  return {{"vocabulary_version", proto.vocabulary_version}, {"names", proto.names}, {"scores", std::move(scores)}};
}

Prototype prototype_from_json(const nlohmann::json& doc) {
  try {
    Prototype proto;
    proto.vocabulary_version = doc.at("vocabulary_version").get<int>();
    if (proto.vocabulary_version != kVocabularyVersion) {
      throw DataError("prototype vocabulary version " + std::to_string(proto.vocabulary_version) +
                      " is not supported (expected " + std::to_string(kVocabularyVersion) + ")");
    }
    proto.names = doc.at("names").get<std::vector<std::string>>();
    const auto& scores = doc.at("scores");
    for (const auto& name : proto.names) {
      const auto& entry = scores.at(name);
      ScoreGaussian g;
      if (!entry.at("mu").is_null()) g.mu = entry.at("mu").get<double>();
      if (!entry.at("sigma").is_null()) g.sigma = entry.at("sigma").get<double>();
      g.n = entry.at("n").get<std::size_t>();
      if (g.sigma && *g.sigma < 0.0) throw DataError("prototype: negative sigma for " + name);
      proto.scores.emplace(name, g);
    }
    if (scores.size() != proto.names.size()) throw DataError("prototype: scores and names differ");
    return proto;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("prototype: ") + e.what());
  }
}

void save_prototype(const Prototype& proto, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(proto).dump(2) << '\n';
}

Prototype load_prototype(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return prototype_from_json(doc);
}

}  // namespace speechmark
