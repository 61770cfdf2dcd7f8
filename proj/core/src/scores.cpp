#include "speechmark/scores.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speechmark/lexical.hpp"
#include "speechmark/stats.hpp"
#include "speechmark/text.hpp"

namespace speechmark {

void ScoreVector::set(const std::string& name, double value) {
  if (!std::isfinite(value)) {
    mark_missing(name);
    return;
  }
  missing.erase(name);
  values[name] = value;
}

void ScoreVector::set(const std::string& name, std::optional<double> value) {
  if (value) set(name, *value);
  else mark_missing(name);
}

void ScoreVector::mark_missing(const std::string& name) {
  values.erase(name);
  missing.insert(name);
}

std::optional<double> ScoreVector::get(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

void ScoreVector::merge(const ScoreVector& other) {
  for (const auto& [name, value] : other.values) {
    if (values.contains(name) || missing.contains(name)) throw std::logic_error("duplicate score " + name);
    values.emplace(name, value);
  }
  for (const auto& name : other.missing) {
    if (values.contains(name) || missing.contains(name)) throw std::logic_error("duplicate score " + name);
    missing.insert(name);
  }
}

nlohmann::json to_json(const ScoreVector& scores) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [name, value] : scores.values) values[name] = value;
  nlohmann::json missing = nlohmann::json::array();
  for (const auto& name : scores.missing) missing.push_back(name);
  return {{"values", std::move(values)}, {"missing", std::move(missing)}};
}

ScoreVector score_vector_from_json(const nlohmann::json& doc) {
  ScoreVector out;
  for (const auto& [name, value] : doc.at("values").items()) out.values[name] = value.get<double>();
  for (const auto& name : doc.at("missing")) out.missing.insert(name.get<std::string>());
  return out;
}

namespace {

std::span<const CleanWord> chunk_words(const Chunk& chunk, const Recording& recording) {
  return std::span<const CleanWord>(recording.clean.words)
      .subspan(chunk.clean_words.begin, chunk.clean_words.size());
}

std::vector<std::string> standardized(std::span<const CleanWord> words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(standardize(w.text));
  return out;
}

bool all_tagged(std::span<const CleanWord> words) {
  return !words.empty() && std::all_of(words.begin(), words.end(), [](const CleanWord& w) { return w.pos.has_value(); });
}

std::string join(std::span<const std::string> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += parts[i];
  }
  return out;
}

void mark_all_missing(ScoreVector& out, std::initializer_list<std::string> names) {
  for (const auto& n : names) out.mark_missing(n);
}

}  // namespace

ScoreVector fluency_scores(const Chunk& chunk, const Recording& recording, const AlignedTranscript& aligned,
                           const ScoreContext& context) {
  ScoreVector out;
  const auto words = chunk_words(chunk, recording);
  const auto& quantiles = context.vocabulary.quantiles();

  // Noun phoneme length only needs tags.
  if (all_tagged(words)) {
    std::vector<double> lengths;
    for (const auto& w : words) {
      if (*w.pos == PosTag::Noun) lengths.push_back(static_cast<double>(context.phonemizer.phoneme_count(w)));
    }
    out.set("mean_phoneme_length_nouns", lengths.empty() ? std::nullopt : std::optional(stats::mean(lengths)));
  } else {
    out.mark_missing("mean_phoneme_length_nouns");
  }

  const double duration = chunk.duration();
  if (!chunk.span_start || !(duration > 0.0) || words.empty()) {
    mark_all_missing(out, {"words_per_second", "phonemes_per_second", "percentage_time_spoken",
                           "productive_time_ratio", "pause_per_word"});
    for (const int q : quantiles) {
      out.mark_missing(pause_length_name(q));
      out.mark_missing(pause_distance_name(q));
    }
    return out;
  }

  const double n_words = static_cast<double>(words.size());
  out.set("words_per_second", n_words / duration);

  std::size_t phonemes = 0;
  for (const auto& w : words) phonemes += context.phonemizer.phoneme_count(w);
  out.set("phonemes_per_second", static_cast<double>(phonemes) / duration);

  // Acoustic token time inside the chunk span.
  double spoken = 0.0;
  for (std::size_t i = chunk.acoustic_tokens.begin; i < chunk.acoustic_tokens.end; ++i) {
    const auto& tok = recording.acoustic.tokens[i];
    const double lo = std::max(tok.start, *chunk.span_start);
    const double hi = std::min(tok.end, *chunk.span_end);
    if (hi > lo) spoken += hi - lo;
  }
  out.set("percentage_time_spoken", std::clamp(spoken / duration, 0.0, 1.0));

  // Strict spoken time: the span without its pauses (acoustic side) against
  // the summed transferred word durations (clean side).
  double pause_time = 0.0;
  for (const auto& p : chunk.pauses) pause_time += p.duration();
  double clean_time = 0.0;
  for (std::size_t i = chunk.clean_words.begin; i < chunk.clean_words.end; ++i) {
    if (const auto& t = aligned.word_timings[i]) clean_time += t->end - t->start;
  }
  out.set("productive_time_ratio",
          clean_time > 0.0 ? std::optional((duration - pause_time) / clean_time) : std::nullopt);

  std::vector<double> lengths;
  for (const auto& p : chunk.pauses) lengths.push_back(p.duration());
  std::vector<double> distances;
  for (std::size_t i = 1; i < chunk.pauses.size(); ++i) {
    distances.push_back(chunk.pauses[i].start - chunk.pauses[i - 1].end);
  }
  for (const int q : quantiles) {
    const double p = q / 100.0;
    out.set(pause_length_name(q), lengths.empty() ? std::nullopt : std::optional(stats::quantile(lengths, p)));
    out.set(pause_distance_name(q),
            distances.empty() ? std::nullopt : std::optional(stats::quantile(distances, p)));
  }
  out.set("pause_per_word", static_cast<double>(chunk.pauses.size()) / n_words);
  return out;
}

ScoreVector lexical_scores(const Chunk& chunk, const Recording& recording, const ScoreContext& context) {
  ScoreVector out;
  const auto words = chunk_words(chunk, recording);
  const auto tokens = standardized(words);
  const auto& windows = context.vocabulary.mattr_windows();
  if (tokens.empty()) {
    mark_all_missing(out, {"ttr", "gzip_ratio", "hdd", "mtld", "word_information"});
    for (const int w : windows) out.mark_missing(mattr_name(w));
    return out;
  }

  out.set("ttr", lexical::ttr(tokens));
  for (const int w : windows) {
    out.set(mattr_name(w), lexical::mattr(tokens, static_cast<std::size_t>(w)));
  }
  out.set("gzip_ratio", lexical::gzip_ratio(join(tokens)));
  out.set("hdd", lexical::hdd(tokens));
  out.set("mtld", lexical::mtld(tokens));

  std::vector<std::string> lemmas;
  lemmas.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string lemma = words[i].lemma ? standardize(*words[i].lemma) : std::string();
    lemmas.push_back(lemma.empty() ? tokens[i] : std::move(lemma));
  }
  out.set("word_information", lexical::entropy_bits(lemmas));
  return out;
}

ScoreVector syntax_scores(const Chunk& chunk, const Recording& recording) {
  ScoreVector out;
  const auto words = chunk_words(chunk, recording);
  if (all_tagged(words)) {
    auto ratio = [&](PosTag tag) {
      const auto n = std::count_if(words.begin(), words.end(), [tag](const CleanWord& w) { return *w.pos == tag; });
      return static_cast<double>(n) / static_cast<double>(words.size());
    };
    out.set("noun_ratio", ratio(PosTag::Noun));
    out.set("verb_ratio", ratio(PosTag::Verb));
    out.set("adjective_ratio", ratio(PosTag::Adj));
  } else {
    mark_all_missing(out, {"noun_ratio", "verb_ratio", "adjective_ratio"});
  }

  if (words.empty()) {
    mark_all_missing(out, {"mean_sentence_length", "grammar_acceptance"});
    return out;
  }
  const std::size_t first_sentence = words.front().sentence_index;
  const std::size_t last_sentence = words.back().sentence_index;
  const std::size_t sentences = last_sentence - first_sentence + 1;
  out.set("mean_sentence_length", static_cast<double>(words.size()) / static_cast<double>(sentences));

  const auto& grammar = recording.clean.external_scores.grammar_acceptance;
  if (grammar && grammar->size() > last_sentence) {
    std::span<const double> per_sentence(grammar->data() + first_sentence, sentences);
    out.set("grammar_acceptance", stats::mean(per_sentence));
  } else {
    out.mark_missing("grammar_acceptance");
  }
  return out;
}

ScoreVector pronunciation_scores(const Chunk& chunk, const Recording& recording, const AlignedTranscript& aligned) {
  ScoreVector out;
  const std::size_t reference_words = chunk.clean_words.size();
  if (reference_words == 0) {
    mark_all_missing(out, {"wer_acoustic", "cer_acoustic"});
    return out;
  }

  std::size_t errors = 0;
  for (const auto& op : aligned.ops) {
    if (op.kind == EditKind::Match) continue;
    const bool in_chunk = op.clean_index ? chunk.clean_words.contains(*op.clean_index)
                                         : chunk.acoustic_tokens.contains(*op.acoustic_index);
    if (in_chunk) ++errors;
  }
  out.set("wer_acoustic", static_cast<double>(errors) / static_cast<double>(reference_words));

  std::vector<std::string> acoustic;
  for (std::size_t i = chunk.acoustic_tokens.begin; i < chunk.acoustic_tokens.end; ++i) {
    acoustic.push_back(standardize(recording.acoustic.tokens[i].text));
  }
  const auto clean = standardized(chunk_words(chunk, recording));
  const std::u32string a = to_code_points(join(acoustic));
  const std::u32string b = to_code_points(join(clean));
  const std::size_t distance = edit_distance<char32_t>(a, b);
  out.set("cer_acoustic", static_cast<double>(distance) / static_cast<double>(b.size()));
  return out;
}

ScoreVector coherence_scores(const Chunk& chunk, const Recording& recording) {
  ScoreVector out;
  const auto& ext = recording.clean.external_scores;
  out.set("ctrleval", ext.ctrleval);
  out.set("gpt2_perplexity", ext.gpt2_perplexity);

  const auto words = chunk_words(chunk, recording);
  const bool has_vectors =
      !words.empty() && std::any_of(words.begin(), words.end(), [](const CleanWord& w) { return w.vector.has_value(); });
  if (!has_vectors) {
    out.set("word_vector_coherence", ext.word_vector_coherence);
    return out;
  }

  // Mean vector per sentence over the words that carry one.
  std::vector<std::vector<double>> sentence_means;
  std::size_t current = words.front().sentence_index;
  std::vector<double> sum;
  std::size_t count = 0;
  auto flush = [&] {
    if (count > 0) {
      for (auto& x : sum) x /= static_cast<double>(count);
      sentence_means.push_back(std::move(sum));
    }
    sum.clear();
    count = 0;
  };
  for (const auto& w : words) {
    if (w.sentence_index != current) {
      flush();
      current = w.sentence_index;
    }
    if (!w.vector) continue;
    if (sum.empty()) sum.assign(w.vector->size(), 0.0);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += (*w.vector)[k];
    ++count;
  }
  flush();

  std::vector<double> similarities;
  for (std::size_t i = 1; i < sentence_means.size(); ++i) {
    if (auto c = stats::cosine(sentence_means[i - 1], sentence_means[i])) similarities.push_back(*c);
  }
  out.set("word_vector_coherence", similarities.empty() ? std::nullopt : std::optional(stats::mean(similarities)));
  return out;
}

ScoreVector score_chunk(const Chunk& chunk, const Recording& recording, const AlignedTranscript& aligned,
                        const ScoreContext& context) {
  ScoreVector out = fluency_scores(chunk, recording, aligned, context);
  out.merge(lexical_scores(chunk, recording, context));
  out.merge(syntax_scores(chunk, recording));
  out.merge(pronunciation_scores(chunk, recording, aligned));
  out.merge(coherence_scores(chunk, recording));
  for (const auto& name : context.vocabulary.names()) {
    if (!out.values.contains(name) && !out.missing.contains(name)) out.mark_missing(name);
  }
  return out;
}

ScoreVector average_scores(std::span<const ScoreVector> chunks) {
  if (chunks.empty()) throw std::invalid_argument("average_scores: no chunk vectors");
  std::map<std::string, std::pair<double, std::size_t>> sums;
  std::set<std::string> names;
  for (const auto& c : chunks) {
    for (const auto& [name, value] : c.values) {
      auto& [sum, n] = sums[name];
      sum += value;
      ++n;
      names.insert(name);
    }
    names.insert(c.missing.begin(), c.missing.end());
  }
  ScoreVector out;
  for (const auto& name : names) {
    auto it = sums.find(name);
    if (it == sums.end()) out.mark_missing(name);
    else out.set(name, it->second.first / static_cast<double>(it->second.second));
  }
  return out;
}

}  // namespace speechmark
