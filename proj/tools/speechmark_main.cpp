#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "speechmark/align.hpp"
#include "speechmark/annotate.hpp"
#include "speechmark/config.hpp"
#include "speechmark/corpus.hpp"
#include "speechmark/error.hpp"
#include "speechmark/learn.hpp"
#include "speechmark/log.hpp"
#include "speechmark/pipeline.hpp"
#include "speechmark/prototype.hpp"
#include "speechmark/report.hpp"
#include "speechmark/tables.hpp"

namespace sm = speechmark;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

std::string config_key_listing() {
  std::ostringstream out;
  out << "Config keys (file: key = value, [svc]/[svr] sections; flags win):\n";
  for (const auto& k : sm::config_keys()) {
    out << "  " << k.name << " = " << (k.default_value.empty() ? "\"\"" : k.default_value) << "    "
        << k.description << "\n";
  }
  out << "Environment: SPEECHMARK_SEED overrides seed.\n"
      << "Exit codes: 0 success, 2 config error, 3 data error, 4 internal error.\n";
  return out.str();
}

struct Globals {
  std::string config_file;
  std::vector<std::string> assignments;
  std::string log_file;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<double> pause_threshold;
  std::optional<std::size_t> min_chunk_words;
  std::optional<double> svc_C;
  std::optional<double> svr_C;
  std::optional<double> svr_epsilon;
  std::string lexicon;
};

sm::PipelineConfig resolve_config(const Globals& g) {
  sm::PipelineConfig c = g.config_file.empty() ? sm::PipelineConfig{} : sm::load_config(g.config_file);
  sm::apply_environment(c);
  for (const auto& a : g.assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw sm::ConfigError("--set expects key=value, got '" + a + "'");
    sm::set_config_value(c, a.substr(0, eq), a.substr(eq + 1));
  }
  if (g.jobs) c.jobs = *g.jobs;
  if (g.seed) c.seed = *g.seed;
  if (g.pause_threshold) c.pause_threshold_s = *g.pause_threshold;
  if (g.min_chunk_words) c.min_chunk_words = *g.min_chunk_words;
  if (g.svc_C) c.svc_C = *g.svc_C;
  if (g.svr_C) c.svr_C = *g.svr_C;
  if (g.svr_epsilon) c.svr_epsilon = *g.svr_epsilon;
  if (!g.lexicon.empty()) c.lexicon = g.lexicon;
  c.validate();
  return c;
}

// Writes to stdout for "-" or an empty path.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    sm::write_file_atomic(path, content);
  }
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(sm::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw sm::DataError(path + ": " + e.what());
  }
}

std::vector<sm::Recording> load_inputs(const std::string& input, const std::string& dir) {
  if (!input.empty()) return {sm::load_recording(input)};
  return sm::load_dataset(dir);
}

sm::Task resolve_task(const std::string& text, const sm::PipelineConfig& config) {
  if (text.empty()) return config.task;
  const auto task = sm::parse_task(text);
  if (!task) throw sm::ConfigError("--task must be binary, subtype or aq");
  return *task;
}

sm::Dataset dataset_from_features(const std::string& path, sm::Task task) {
  std::ifstream in(path);
  if (!in) throw sm::DataError("cannot read " + path);
  const auto table = sm::read_features_csv(in);
  return sm::make_dataset(table.rows, table.names, task);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speech marker pipeline: alignment, annotation, scoring, prototypes and LOSO evaluation."};
  app.footer(config_key_listing());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_file, "Config file")->check(CLI::ExistingFile);
  app.add_option("--set", g.assignments, "Override a config key (key=value), repeatable");
  app.add_option("--log", g.log_file, "JSON-lines log file (default stderr)");
  app.add_option("--jobs", g.jobs, "Worker threads");
  app.add_option("--seed", g.seed, "Solver seed");
  app.add_option("--pause-threshold", g.pause_threshold, "Pause threshold in seconds");
  app.add_option("--min-chunk-words", g.min_chunk_words, "Minimum words per chunk");
  app.add_option("--svc-C", g.svc_C, "SVC regularization strength");
  app.add_option("--svr-C", g.svr_C, "SVR regularization strength");
  app.add_option("--svr-epsilon", g.svr_epsilon, "SVR epsilon");
  app.add_option("--lexicon", g.lexicon, "Pronunciation lexicon file");

  std::string input, dataset_dir, out, dump, proto_path, scores_path, features_path, task_text, report_path,
      healthy_dir, format = "markdown", out_dir;
  bool by_category = false;

  auto* align_cmd = app.add_subcommand("align", "Align one recording and dump the edit operations");
  align_cmd->add_option("--input", input, "Recording JSON")->required();
  align_cmd->add_option("--dump", dump, "JSON-lines output (- for stdout)")->default_val("-")->expected(0, 1);

  auto* annotate_cmd = app.add_subcommand("annotate", "Chunk recordings and summarize pauses and fillers");
  auto* ann_in = annotate_cmd->add_option("--input", input, "Recording JSON");
  auto* ann_dir = annotate_cmd->add_option("--dataset", dataset_dir, "Directory of recordings");
  ann_in->excludes(ann_dir);
  annotate_cmd->add_option("--out", out, "JSON-lines output (- for stdout)")->default_val("-");

  auto* score_cmd = app.add_subcommand("score", "Score recordings into a CSV");
  auto* score_in = score_cmd->add_option("--input", input, "Recording JSON");
  auto* score_dir = score_cmd->add_option("--dataset", dataset_dir, "Directory of recordings");
  score_in->excludes(score_dir);
  score_cmd->add_option("--out", out, "CSV output (- for stdout)")->default_val("-");

  auto* fit_cmd = app.add_subcommand("fit-prototypes", "Fit healthy-speech prototypes");
  fit_cmd->add_option("--healthy-dir", healthy_dir, "Directory of healthy recordings")->required();
  fit_cmd->add_option("--out", out, "Prototype JSON")->required();

  auto* featurize_cmd = app.add_subcommand("featurize", "Prototype-distance features");
  featurize_cmd->add_option("--proto", proto_path, "Prototype JSON")->required();
  auto* feat_dir = featurize_cmd->add_option("--dataset", dataset_dir, "Directory of recordings");
  auto* feat_scores = featurize_cmd->add_option("--scores", scores_path, "Scores CSV from `score`");
  feat_dir->excludes(feat_scores);
  featurize_cmd->add_option("--out", out, "CSV output (- for stdout)")->default_val("-");

  auto* train_cmd = app.add_subcommand("train", "Train a model on all recordings");
  train_cmd->add_option("--task", task_text, "binary, subtype or aq");
  train_cmd->add_option("--features", features_path, "Features CSV")->required();
  train_cmd->add_option("--out", out, "Model JSON")->required();

  auto* loso_cmd = app.add_subcommand("loso", "Leave-one-subject-out evaluation");
  loso_cmd->add_option("--task", task_text, "binary, subtype or aq");
  loso_cmd->add_option("--features", features_path, "Features CSV")->required();
  loso_cmd->add_option("--report", report_path, "Report JSON")->required();
  loso_cmd->add_flag("--by-category", by_category, "Evaluate each score category separately");

  auto* report_cmd = app.add_subcommand("report", "Render a report JSON as a table");
  report_cmd->add_option("--input", input, "Report JSON from `loso` or `run`")->required();
  report_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"markdown"}));
  report_cmd->add_option("--out", out, "Output (- for stdout)")->default_val("-");

  auto* run_cmd = app.add_subcommand("run", "Full pipeline from recordings to reports");
  run_cmd->add_option("--healthy-dir", healthy_dir, "Directory of healthy recordings");
  run_cmd->add_option("--dataset-dir", dataset_dir, "Directory of recordings to classify");
  run_cmd->add_option("--out-dir", out_dir, "Output directory");
  run_cmd->add_option("--task", task_text, "binary, subtype or aq");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  std::ofstream log_stream;
  std::unique_ptr<sm::EventLog> log;
  if (g.log_file.empty()) {
    log = std::make_unique<sm::EventLog>(std::cerr);
  } else {
    log_stream.open(g.log_file, std::ios::app);
    log = std::make_unique<sm::EventLog>(log_stream);
  }

  try {
    const auto config = resolve_config(g);
    if ((annotate_cmd->parsed() || score_cmd->parsed()) && input.empty() && dataset_dir.empty()) {
      throw sm::ConfigError("one of --input or --dataset is required");
    }

    if (align_cmd->parsed()) {
      const auto rec = sm::load_recording(input);
      const auto aligned = sm::align(rec.acoustic, rec.clean);
      std::string lines;
      for (const auto& op : aligned.ops) lines += sm::to_json(op).dump() + "\n";
      write_output(dump, lines);
      log->emit({{"event", "aligned"}, {"recording_id", rec.recording_id}, {"cost", sm::edit_cost(aligned)}});
    } else if (annotate_cmd->parsed()) {
      const auto options = sm::make_chunk_options(config);
      std::string lines;
      for (const auto& rec : load_inputs(input, dataset_dir)) {
        const auto aligned = sm::align(rec.acoustic, rec.clean);
        const auto result = sm::chunk(rec, aligned, options);
        if (result.skipped()) {
          log->emit({{"event", "recording_skipped"}, {"recording_id", rec.recording_id},
                     {"reason", "fewer than " + std::to_string(options.min_words) + " words in complete sentences"}});
        }
        for (const auto& c : result.chunks) {
          lines += nlohmann::json{{"recording_id", c.recording_id},
                                  {"chunk_index", c.chunk_index},
                                  {"words", c.clean_words.size()},
                                  {"pauses", c.pauses.size()},
                                  {"fillers", c.filler_acoustic_indices.size()},
                                  {"duration", c.duration()}}
                       .dump() +
                   "\n";
        }
      }
      write_output(out, lines);
    } else if (score_cmd->parsed()) {
      const auto context = sm::make_score_context(config);
      const auto recs = load_inputs(input, dataset_dir);
      const auto scores = sm::score_dataset(recs, context, sm::make_chunk_options(config), config.jobs, *log);
      std::ostringstream csv;
      sm::write_scores_csv(csv, scores, context.vocabulary);
      write_output(out, csv.str());
    } else if (fit_cmd->parsed()) {
      const auto context = sm::make_score_context(config);
      const auto healthy = sm::load_dataset(healthy_dir);
      const auto scores = sm::score_dataset(healthy, context, sm::make_chunk_options(config), config.jobs, *log);
      const auto proto = sm::fit_prototypes(scores, context.vocabulary);
      write_output(out, sm::to_json(proto).dump(2) + "\n");
    } else if (featurize_cmd->parsed()) {
      const auto context = sm::make_score_context(config);
      const auto proto = sm::prototype_from_json(read_json(proto_path));
      std::vector<sm::RecordingScores> scores;
      if (!scores_path.empty()) {
        std::ifstream in(scores_path);
        if (!in) throw sm::DataError("cannot read " + scores_path);
        scores = sm::read_scores_csv(in, context.vocabulary);
      } else if (!dataset_dir.empty()) {
        scores = sm::score_dataset(sm::load_dataset(dataset_dir), context, sm::make_chunk_options(config),
                                   config.jobs, *log);
      } else {
        throw sm::ConfigError("one of --dataset or --scores is required");
      }
      const auto features = sm::featurize(scores, proto, context.vocabulary);
      std::ostringstream csv;
      sm::write_features_csv(csv, features, context.vocabulary.names());
      write_output(out, csv.str());
    } else if (train_cmd->parsed()) {
      const auto data = dataset_from_features(features_path, resolve_task(task_text, config));
      const auto model = sm::train(data, config.loso_options());
      if (!model.converged) log->emit({{"event", "not_converged"}, {"iterations", model.iterations}});
      write_output(out, sm::to_json(model).dump(2) + "\n");
    } else if (loso_cmd->parsed()) {
      const auto task = resolve_task(task_text, config);
      const auto data = dataset_from_features(features_path, task);
      nlohmann::json doc;
      if (by_category) {
        if (!sm::is_classification(task)) throw sm::ConfigError("--by-category needs a classification task");
        const auto vocabulary = sm::make_score_context(config).vocabulary;
        doc = sm::ablation_to_json(task, sm::ablation_by_category(data, vocabulary, config.loso_options()));
      } else {
        const auto report = sm::loso(data, config.loso_options());
        for (const auto& f : report.flagged_folds) {
          log->emit({{"event", "fold_flagged"}, {"subject_id", f.subject_id}, {"reason", f.reason}});
        }
        doc = sm::to_json(report);
      }
      write_output(report_path, doc.dump(2) + "\n");
    } else if (report_cmd->parsed()) {
      write_output(out, sm::render_markdown(read_json(input)));
    } else if (run_cmd->parsed()) {
      auto run_config = config;
      if (!healthy_dir.empty()) run_config.healthy_dir = healthy_dir;
      if (!dataset_dir.empty()) run_config.dataset_dir = dataset_dir;
      if (!out_dir.empty()) run_config.out_dir = out_dir;
      run_config.task = resolve_task(task_text, config);
      const auto artifacts = sm::run_pipeline(run_config, *log);
      log->emit({{"event", "run_complete"}, {"report", artifacts.report_json.string()}});
    }
  } catch (const sm::ConfigError& e) {
    log->emit({{"event", "error"}, {"kind", "config"}, {"message", e.what()}});
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sm::StageError& e) {
    log->emit({{"event", "error"},
               {"kind", e.data_error() ? "data" : "internal"},
               {"stage", e.stage()},
               {"recording_id", e.recording_id()},
               {"message", e.what()}});
    std::cerr << (e.data_error() ? "data error: " : "internal error: ") << e.what() << "\n";
    return e.data_error() ? kExitData : kExitInternal;
  } catch (const sm::DataError& e) {
    log->emit({{"event", "error"}, {"kind", "data"}, {"message", e.what()}});
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    log->emit({{"event", "error"}, {"kind", "internal"}, {"message", e.what()}});
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return EXIT_SUCCESS;
}
