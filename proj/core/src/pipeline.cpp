#include "speechmark/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "speechmark/align.hpp"
#include "speechmark/error.hpp"
#include "speechmark/report.hpp"

namespace speechmark {

void EventLog::emit(nlohmann::json event) {
  if (out_ == nullptr) return;
  std::lock_guard lock(mutex_);
  *out_ << event.dump() << '\n';
  out_->flush();
}

StageError::StageError(std::string stage, std::string recording_id, const std::string& what)
    : std::runtime_error(stage + (recording_id.empty() ? "" : " [" + recording_id + "]") + ": " + what),
      stage_(std::move(stage)),
      recording_id_(std::move(recording_id)) {}

ScoreContext make_score_context(const PipelineConfig& config) {
  ScoreVocabulary vocabulary(config.mattr_windows, config.quantiles);
  Phonemizer phonemizer = config.lexicon.empty() ? Phonemizer() : Phonemizer::from_file(config.lexicon);
  return {std::move(vocabulary), std::move(phonemizer)};
}

ChunkOptions make_chunk_options(const PipelineConfig& config) {
  return {config.min_chunk_words, config.pause_threshold_s};
}

RecordingScores score_recording(const Recording& recording, const ScoreContext& context,
                                const ChunkOptions& options) {
  RecordingScores out;
  out.recording_id = recording.recording_id;
  out.subject_id = recording.subject_id;
  out.label = recording.label;
  out.aq = recording.aq;

  const auto aligned = align(recording.acoustic, recording.clean);
  const auto chunking = chunk(recording, aligned, options);
  for (const auto& c : chunking.chunks) out.chunk_scores.push_back(score_chunk(c, recording, aligned, context));
  out.chunks = out.chunk_scores.size();
  if (out.chunks > 0) out.scores = average_scores(out.chunk_scores);
  return out;
}

std::vector<RecordingScores> score_dataset(std::span<const Recording> recordings, const ScoreContext& context,
                                           const ChunkOptions& options, std::size_t jobs, EventLog& log) {
  std::vector<RecordingScores> scored(recordings.size());
  detail::parallel_for(recordings.size(), jobs, [&](std::size_t i) {
    const auto& rec = recordings[i];
    try {
      scored[i] = score_recording(rec, context, options);
    } catch (const DataError& e) {
      throw StageError("score", rec.recording_id, e.what());
    } catch (const std::exception& e) {
      StageError err("score", rec.recording_id, e.what());
      err.set_data_error(false);
      throw err;
    }
    const auto without_lemma = std::count_if(rec.clean.words.begin(), rec.clean.words.end(),
                                             [](const CleanWord& w) { return !w.lemma.has_value(); });
    if (without_lemma > 0) {
      log.emit({{"event", "lemma_fallback"}, {"recording_id", rec.recording_id}, {"words", without_lemma}});
    }
  });

  std::vector<RecordingScores> out;
  for (auto& s : scored) {
    if (s.chunks == 0) {
      log.emit({{"event", "recording_skipped"},
                {"recording_id", s.recording_id},
                {"reason", "fewer than " + std::to_string(options.min_words) + " words in complete sentences"}});
      continue;
    }
    log.emit({{"event", "recording_scored"}, {"recording_id", s.recording_id}, {"chunks", s.chunks}});
    out.push_back(std::move(s));
  }
  return out;
}

Prototype fit_prototypes(std::span<const RecordingScores> healthy, const ScoreVocabulary& vocabulary) {
  std::vector<ScoreVector> chunks;
  for (const auto& r : healthy) chunks.insert(chunks.end(), r.chunk_scores.begin(), r.chunk_scores.end());
  return fit_prototype(chunks, vocabulary);
}

std::vector<FeatureVector> featurize(std::span<const RecordingScores> scores, const Prototype& proto,
                                     const ScoreVocabulary& vocabulary) {
  std::vector<FeatureVector> out;
  for (const auto& r : scores) {
    if (r.chunks == 0) continue;
    out.push_back({r.recording_id, r.subject_id, r.label, r.aq, transform(r.scores, proto, vocabulary)});
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

template <typename F>
auto stage(std::string_view name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const DataError& e) {
    throw StageError(std::string(name), "", e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    StageError err(std::string(name), "", e.what());
    err.set_data_error(false);
    throw err;
  }
}

}  // namespace

RunArtifacts run_pipeline(const PipelineConfig& config, EventLog& log) {
  config.validate();
  if (config.healthy_dir.empty()) throw ConfigError("config key 'healthy_dir': required for run");
  if (config.dataset_dir.empty()) throw ConfigError("config key 'dataset_dir': required for run");
  if (config.out_dir.empty()) throw ConfigError("config key 'out_dir': required for run");

  const auto context = make_score_context(config);
  const auto options = make_chunk_options(config);
  const auto& vocabulary = context.vocabulary;

  RunArtifacts artifacts;
  const auto& dir = config.out_dir;
  artifacts.prototype_json = dir / "prototype.json";
  artifacts.scores_csv = dir / "scores.csv";
  artifacts.features_csv = dir / "features.csv";
  artifacts.report_json = dir / "report.json";
  artifacts.ablation_json = dir / "ablation.json";
  artifacts.report_markdown = dir / "report.md";

  std::vector<std::filesystem::path> written;
  auto emit_file = [&](const std::filesystem::path& path, const std::string& content) {
    write_file_atomic(path, content);
    written.push_back(path);
    log.emit({{"event", "artifact_written"}, {"path", path.string()}});
  };

  try {
    std::filesystem::create_directories(dir);

    const auto healthy = stage("load_healthy", [&] { return load_dataset(config.healthy_dir); });
    log.emit({{"event", "loaded"}, {"stage", "load_healthy"}, {"recordings", healthy.size()}});
    const auto healthy_scores = score_dataset(healthy, context, options, config.jobs, log);
    const auto proto = stage("fit_prototypes", [&] { return fit_prototypes(healthy_scores, vocabulary); });
    log.emit({{"event", "prototype_fitted"}, {"fitted", proto.fitted_count()}, {"scores", proto.names.size()}});
    emit_file(artifacts.prototype_json, to_json(proto).dump(2) + "\n");

    const auto recordings = stage("load_dataset", [&] { return load_dataset(config.dataset_dir); });
    log.emit({{"event", "loaded"}, {"stage", "load_dataset"}, {"recordings", recordings.size()}});
    const auto scores = score_dataset(recordings, context, options, config.jobs, log);
    std::ostringstream scores_csv;
    write_scores_csv(scores_csv, scores, vocabulary);
    emit_file(artifacts.scores_csv, scores_csv.str());

    const auto features = stage("featurize", [&] { return featurize(scores, proto, vocabulary); });
    std::ostringstream features_csv;
    write_features_csv(features_csv, features, vocabulary.names());
    emit_file(artifacts.features_csv, features_csv.str());

    const auto data = make_dataset(features, vocabulary.names(), config.task);
    const auto loso_options = config.loso_options();
    const auto report = stage("loso", [&] { return loso(data, loso_options); });
    for (const auto& f : report.flagged_folds) {
      log.emit({{"event", "fold_flagged"}, {"subject_id", f.subject_id}, {"reason", f.reason}});
    }
    const auto report_doc = to_json(report);
    emit_file(artifacts.report_json, report_doc.dump(2) + "\n");
    std::string markdown = render_markdown(report_doc);

    if (is_classification(config.task)) {
      const auto ablation = stage("ablation", [&] { return ablation_by_category(data, vocabulary, loso_options); });
      const auto ablation_doc = ablation_to_json(config.task, ablation);
      emit_file(artifacts.ablation_json, ablation_doc.dump(2) + "\n");
      markdown += "\n" + render_markdown(ablation_doc);
    } else {
      artifacts.ablation_json.clear();
    }
    emit_file(artifacts.report_markdown, markdown);
  } catch (...) {
    for (const auto& path : written) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
    try {
      throw;
    } catch (const StageError&) {
      throw;
    } catch (const ConfigError&) {
      throw;
    } catch (const DataError& e) {
      throw StageError("run", "", e.what());
    } catch (const std::exception& e) {
      StageError err("run", "", e.what());
      err.set_data_error(false);
      throw err;
    }
  }
  return artifacts;
}

}  // namespace speechmark
