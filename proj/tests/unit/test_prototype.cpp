#include <cmath>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "speechmark/error.hpp"
#include "speechmark/prototype.hpp"

namespace sm = speechmark;
namespace st = speechmark::testing;

namespace {

sm::ScoreGaussian gaussian(double mu, double sigma) { return {mu, sigma, 10}; }

}  // namespace

TEST(DistanceFeature, FormulaOutsideOneSigma) {
  EXPECT_DOUBLE_EQ(sm::distance_feature(2.0, gaussian(0.0, 1.0)), 0.5);
  EXPECT_DOUBLE_EQ(sm::distance_feature(-4.0, gaussian(0.0, 1.0)), 0.25);
}

TEST(DistanceFeature, PlateauInsideOneSigma) {
  EXPECT_EQ(sm::distance_feature(0.5, gaussian(0.0, 1.0)), 1.0);
  EXPECT_EQ(sm::distance_feature(1.0, gaussian(0.0, 1.0)), 1.0);
  for (const double eps : {0.5, 1e-3, 1e-9}) {
    EXPECT_EQ(sm::distance_feature(3.0 + 2.0 * (1.0 - eps), gaussian(3.0, 2.0)), 1.0);
    EXPECT_EQ(sm::distance_feature(3.0 - 2.0 * (1.0 - eps), gaussian(3.0, 2.0)), 1.0);
  }
}

TEST(DistanceFeature, DegenerateSigma) {
  EXPECT_EQ(sm::distance_feature(5.0, gaussian(5.0, 0.0)), 1.0);
  EXPECT_EQ(sm::distance_feature(5.1, gaussian(5.0, 0.0)), sm::kDegenerateFeatureFloor);
}

TEST(DistanceFeature, MissingOrUnfittedGivesOne) {
  EXPECT_EQ(sm::distance_feature(std::nullopt, gaussian(0.0, 1.0)), 1.0);
  EXPECT_EQ(sm::distance_feature(100.0, sm::ScoreGaussian{}), 1.0);
}

TEST(FitPrototype, TwoPointFit) {
  sm::ScoreVector a, b;
  a.set("ttr", 1.0);
  b.set("ttr", 3.0);
  const auto proto = sm::fit_prototype(std::vector{a, b}, sm::ScoreVocabulary());
  const auto& g = proto.scores.at("ttr");
  EXPECT_DOUBLE_EQ(*g.mu, 2.0);
  EXPECT_DOUBLE_EQ(*g.sigma, std::sqrt(2.0));
  EXPECT_EQ(g.n, 2u);
  EXPECT_FALSE(proto.scores.at("hdd").fitted());
  EXPECT_EQ(proto.fitted_count(), 1u);
}

TEST(FitPrototype, ConstantSamples) {
  std::vector<sm::ScoreVector> samples(3);
  for (auto& s : samples) s.set("ttr", 5.0);
  const auto proto = sm::fit_prototype(samples, sm::ScoreVocabulary());
  EXPECT_EQ(*proto.scores.at("ttr").mu, 5.0);
  EXPECT_EQ(*proto.scores.at("ttr").sigma, 0.0);
}

TEST(FitPrototype, EmptyCorpus) {
  EXPECT_THROW(sm::fit_prototype(std::vector<sm::ScoreVector>{}, sm::ScoreVocabulary()), sm::DataError);
}

TEST(FitPrototype, FittingCorpusMapsMostlyToPlateau) {
  const sm::ScoreVocabulary vocab;
  std::mt19937_64 rng(501);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<sm::ScoreVector> samples(400);
  for (auto& s : samples) {
    std::size_t k = 0;
    for (const auto& name : vocab.names()) s.set(name, 10.0 * static_cast<double>(k++) + 3.0 * normal(rng));
  }
  const auto proto = sm::fit_prototype(samples, vocab);
  std::map<std::string, double> mean;
  for (const auto& s : samples) {
    for (const auto& [name, f] : sm::transform(s, proto, vocab)) {
      EXPECT_GT(f, 0.0);
      EXPECT_LE(f, 1.0);
      mean[name] += f / static_cast<double>(samples.size());
    }
  }
  for (const auto& [name, m] : mean) EXPECT_GE(m, 0.6 - 0.05) << name;
}

TEST(Transform, RejectsForeignVocabulary) {
  const sm::ScoreVocabulary vocab;
  sm::ScoreVector s;
  s.set("ttr", 1.0);
  auto proto = sm::fit_prototype(std::vector{s, s}, vocab);
  const std::vector<int> windows{10, 20};
  const std::vector<int> quantiles{50};
  EXPECT_THROW(sm::transform(s, proto, sm::ScoreVocabulary(windows, quantiles)), sm::DataError);
  proto.vocabulary_version = 0;
  EXPECT_THROW(sm::transform(s, proto, vocab), sm::DataError);
}

TEST(PrototypeFile, RoundTrip) {
  const sm::ScoreVocabulary vocab;
  std::mt19937_64 rng(502);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<sm::ScoreVector> samples(5);
  for (auto& s : samples) {
    for (const auto& name : vocab.names()) {
      if (name != "ctrleval") s.set(name, u(rng));
    }
  }
  const auto proto = sm::fit_prototype(samples, vocab);
  st::TempDir tmp;
  sm::save_prototype(proto, tmp / "p.json");
  EXPECT_EQ(sm::load_prototype(tmp / "p.json"), proto);
}

TEST(PrototypeFile, VersionMismatchIsAnError) {
  auto doc = sm::to_json(sm::fit_prototype(std::vector<sm::ScoreVector>(2), sm::ScoreVocabulary()));
  doc["vocabulary_version"] = 0;
  st::TempDir tmp;
  std::ofstream(tmp / "old.json") << doc.dump();
  try {
    sm::load_prototype(tmp / "old.json");
    FAIL() << "expected DataError";
  } catch (const sm::DataError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(PrototypeFile, GoldenFixtureLoads) {
  const auto proto = sm::load_prototype(st::golden_dir() / "prototype.json");
  EXPECT_EQ(proto.names, sm::ScoreVocabulary().names());
  EXPECT_EQ(proto.fitted_count(), 34u);
}
