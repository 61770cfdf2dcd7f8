#include "speechmark/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "speechmark/annotate.hpp"
#include "speechmark/error.hpp"
#include "speechmark/text.hpp"

namespace speechmark {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<PosTag, std::string_view>, 13> kPosNames{{
    {PosTag::Noun, "NOUN"},
    {PosTag::Verb, "VERB"},
    {PosTag::Adj, "ADJ"},
    {PosTag::Adv, "ADV"},
    {PosTag::Pron, "PRON"},
    {PosTag::Det, "DET"},
    {PosTag::Adp, "ADP"},
    {PosTag::Conj, "CONJ"},
    {PosTag::Num, "NUM"},
    {PosTag::Part, "PART"},
    {PosTag::Intj, "INTJ"},
    {PosTag::Punct, "PUNCT"},
    {PosTag::X, "X"},
}};

constexpr std::array<std::pair<ClassLabel, std::string_view>, 5> kLabelNames{{
    {ClassLabel::Control, "control"},
    {ClassLabel::Anomic, "anomic"},
    {ClassLabel::Broca, "broca"},
    {ClassLabel::Wernicke, "wernicke"},
    {ClassLabel::Other, "other"},
}};

[[noreturn]] void fail(const std::string& field, const std::string& problem) {
  throw DataError("field '" + field + "': " + problem);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string get_string(const json& value, const std::string& field) {
  if (!value.is_string()) fail(field, "expected a string");
  return nfc(value.get<std::string>());
}

double get_number(const json& value, const std::string& field) {
  if (!value.is_number()) fail(field, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::size_t get_index(const json& value, const std::string& field) {
  if (!value.is_number_integer()) fail(field, "expected a non-negative integer");
  if (value.is_number_unsigned()) return value.get<std::size_t>();
  const auto x = value.get<std::int64_t>();
  if (x < 0) fail(field, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

template <typename F>
auto optional_field(const json& obj, const std::string& key, F&& parse) -> std::optional<decltype(parse(obj))> {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return parse(*it);
}

std::vector<double> get_number_list(const json& value, const std::string& field) {
  if (!value.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(get_number(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto& [t, name] : kPosNames) {
    if (t == tag) return name;
  }
  return "X";
}

std::optional<PosTag> parse_pos_tag(std::string_view text) {
  for (const auto& [t, name] : kPosNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

std::string_view to_string(ClassLabel label) {
  for (const auto& [l, name] : kLabelNames) {
    if (l == label) return name;
  }
  return "other";
}

std::optional<ClassLabel> parse_class_label(std::string_view text) {
  for (const auto& [l, name] : kLabelNames) {
    if (name == text) return l;
  }
  return std::nullopt;
}

const std::vector<std::string>& external_score_keys() {
  static const std::vector<std::string> keys{"gpt2_perplexity", "ctrleval", "word_vector_coherence",
                                             "grammar_acceptance"};
  return keys;
}

Recording recording_from_json(const json& doc) {
  if (!doc.is_object()) throw DataError("recording document must be a JSON object");
  Recording rec;
  rec.recording_id = get_string(require(doc, "recording_id", ""), "recording_id");
  rec.subject_id = get_string(require(doc, "subject_id", ""), "subject_id");

  if (auto it = doc.find("label"); it != doc.end() && !it->is_null()) {
    const std::string text = get_string(*it, "label");
    rec.label = parse_class_label(text);
    if (!rec.label) fail("label", "unknown class label '" + text + "'");
  }
  rec.aq = optional_field(doc, "aq", [](const json& v) { return get_number(v, "aq"); });

  const json& acoustic = require(doc, "acoustic", "");
  rec.acoustic.total_duration =
      get_number(require(acoustic, "total_duration", "acoustic"), "acoustic.total_duration");
  const json& tokens = require(acoustic, "tokens", "acoustic");
  if (!tokens.is_array()) fail("acoustic.tokens", "expected an array");
  rec.acoustic.tokens.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string path = "acoustic.tokens[" + std::to_string(i) + "]";
    const json& tok = tokens[i];
    TimedToken token;
    token.text = get_string(require(tok, "t", path), path + ".t");
    token.start = get_number(require(tok, "s", path), path + ".s");
    token.end = get_number(require(tok, "e", path), path + ".e");
    rec.acoustic.tokens.push_back(std::move(token));
  }

  const json& clean = require(doc, "clean", "");
  const json& words = require(clean, "words", "clean");
  if (!words.is_array()) fail("clean.words", "expected an array");
  rec.clean.words.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string path = "clean.words[" + std::to_string(i) + "]";
    const json& w = words[i];
    CleanWord word;
    word.text = get_string(require(w, "w", path), path + ".w");
    word.sentence_index = get_index(require(w, "sent", path), path + ".sent");
    if (auto it = w.find("pos"); it != w.end() && !it->is_null()) {
      const std::string tag = get_string(*it, path + ".pos");
      word.pos = parse_pos_tag(tag);
      if (!word.pos) fail(path + ".pos", "unknown POS tag '" + tag + "'");
    }
    word.lemma = optional_field(w, "lemma", [&](const json& v) { return get_string(v, path + ".lemma"); });
    word.phonemes = optional_field(w, "ph", [&](const json& v) {
      if (!v.is_array()) fail(path + ".ph", "expected an array of strings");
      std::vector<std::string> ph;
      for (std::size_t k = 0; k < v.size(); ++k) {
        ph.push_back(get_string(v[k], path + ".ph[" + std::to_string(k) + "]"));
      }
      return ph;
    });
    word.vector = optional_field(w, "vec", [&](const json& v) { return get_number_list(v, path + ".vec"); });
    rec.clean.words.push_back(std::move(word));
  }
  rec.clean.sentence_count = rec.clean.words.empty() ? 0 : rec.clean.words.back().sentence_index + 1;

  if (auto it = clean.find("external_scores"); it != clean.end() && !it->is_null()) {
    if (!it->is_object()) fail("clean.external_scores", "expected an object");
    const auto& keys = external_score_keys();
    for (const auto& [key, value] : it->items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail("clean.external_scores." + key, "unknown external score key");
      }
      if (value.is_null()) continue;
      const std::string path = "clean.external_scores." + key;
      auto& ext = rec.clean.external_scores;
      if (key == "gpt2_perplexity") ext.gpt2_perplexity = get_number(value, path);
      else if (key == "ctrleval") ext.ctrleval = get_number(value, path);
      else if (key == "word_vector_coherence") ext.word_vector_coherence = get_number(value, path);
      else ext.grammar_acceptance = get_number_list(value, path);
    }
  }

  validate(rec);
  return rec;
}

void validate(const Recording& rec) {
  if (rec.recording_id.empty()) fail("recording_id", "must be non-empty");
  if (rec.subject_id.empty()) fail("subject_id", "must be non-empty");
  if (rec.aq && !(*rec.aq >= 0.0 && *rec.aq <= 100.0)) fail("aq", "must lie in [0, 100]");

  const auto& acoustic = rec.acoustic;
  if (!(acoustic.total_duration >= 0.0)) fail("acoustic.total_duration", "must be non-negative");
  const auto total_us = to_microseconds(acoustic.total_duration);
  for (std::size_t i = 0; i < acoustic.tokens.size(); ++i) {
    const std::string path = "acoustic.tokens[" + std::to_string(i) + "]";
    const TimedToken& tok = acoustic.tokens[i];
    if (tok.text.empty()) fail(path + ".t", "must be non-empty");
    if (contains_whitespace(tok.text)) fail(path + ".t", "must not contain whitespace");
    if (standardize(tok.text).empty()) fail(path + ".t", "has no lexical content after standardization");
    if (!(tok.start >= 0.0)) fail(path + ".s", "must be non-negative");
    if (!(tok.end >= tok.start)) fail(path + ".e", "end precedes start");
    if (to_microseconds(tok.end) > total_us) fail(path + ".e", "exceeds acoustic.total_duration");
    if (i > 0 && to_microseconds(tok.start) < to_microseconds(acoustic.tokens[i - 1].end)) {
      fail(path + ".s", "overlapping token timings (starts before the previous token ends)");
    }
  }

  const auto& words = rec.clean.words;
  std::optional<std::size_t> vector_dim;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string path = "clean.words[" + std::to_string(i) + "]";
    const CleanWord& w = words[i];
    if (w.text.empty()) fail(path + ".w", "must be non-empty");
    if (standardize(w.text).empty()) fail(path + ".w", "has no lexical content after standardization");
    const std::size_t expected_prev = i == 0 ? 0 : words[i - 1].sentence_index;
    if (i == 0 && w.sentence_index != 0) fail(path + ".sent", "first sentence index must be 0");
    if (i > 0 && w.sentence_index != expected_prev && w.sentence_index != expected_prev + 1) {
      fail(path + ".sent", "sentence indices must be contiguous and non-decreasing");
    }
    if (w.vector) {
      if (w.vector->empty()) fail(path + ".vec", "must be non-empty");
      if (vector_dim && *vector_dim != w.vector->size()) fail(path + ".vec", "inconsistent vector dimension");
      vector_dim = w.vector->size();
    }
  }
  const std::size_t expected_sentences = words.empty() ? 0 : words.back().sentence_index + 1;
  if (rec.clean.sentence_count != expected_sentences) {
    fail("clean.sentence_count", "must equal 1 + max sentence index");
  }
  if (const auto& ga = rec.clean.external_scores.grammar_acceptance) {
    if (ga->size() != rec.clean.sentence_count) {
      fail("clean.external_scores.grammar_acceptance",
           "expected one value per sentence (" + std::to_string(rec.clean.sentence_count) + "), got " +
               std::to_string(ga->size()));
    }
  }
}

json to_json(const Recording& rec) {
  json tokens = json::array();
  for (const auto& t : rec.acoustic.tokens) tokens.push_back({{"t", t.text}, {"s", t.start}, {"e", t.end}});

  json words = json::array();
  for (const auto& w : rec.clean.words) {
    json word{{"w", w.text}, {"sent", w.sentence_index}};
    word["pos"] = w.pos ? json(std::string(to_string(*w.pos))) : json(nullptr);
    word["lemma"] = w.lemma ? json(*w.lemma) : json(nullptr);
    word["ph"] = w.phonemes ? json(*w.phonemes) : json(nullptr);
    if (w.vector) word["vec"] = *w.vector;
    words.push_back(std::move(word));
  }

  json external = json::object();
  const auto& ext = rec.clean.external_scores;
  if (ext.gpt2_perplexity) external["gpt2_perplexity"] = *ext.gpt2_perplexity;
  if (ext.ctrleval) external["ctrleval"] = *ext.ctrleval;
  if (ext.word_vector_coherence) external["word_vector_coherence"] = *ext.word_vector_coherence;
  if (ext.grammar_acceptance) external["grammar_acceptance"] = *ext.grammar_acceptance;

  json doc;
  doc["recording_id"] = rec.recording_id;
  doc["subject_id"] = rec.subject_id;
  doc["label"] = rec.label ? json(std::string(to_string(*rec.label))) : json(nullptr);
  doc["aq"] = rec.aq ? json(*rec.aq) : json(nullptr);
  doc["acoustic"] = {{"total_duration", rec.acoustic.total_duration}, {"tokens", std::move(tokens)}};
  doc["clean"] = {{"words", std::move(words)}, {"external_scores", std::move(external)}};
  return doc;
}

Recording load_recording(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open recording file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError("malformed JSON in " + path.string() + ": " + e.what());
  }
  try {
    return recording_from_json(doc);
  } catch (const DataError& e) {
    throw DataError(path.filename().string() + ": " + e.what());
  }
}

namespace {

// Objects are expanded; arrays of objects or arrays get one compact element per line.
void write_pretty(std::ostream& out, const json& value, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) + 1, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth), ' ');
  if (value.is_object() && !value.empty()) {
    out << "{\n";
    std::size_t k = 0;
    for (auto it = value.begin(); it != value.end(); ++it, ++k) {
      out << pad << json(it.key()).dump() << ": ";
      write_pretty(out, it.value(), depth + 1);
      out << (k + 1 < value.size() ? ",\n" : "\n");
    }
    out << close_pad << '}';
  } else if (value.is_array() && !value.empty() && value.front().is_structured()) {
    out << "[\n";
    for (std::size_t k = 0; k < value.size(); ++k) {
      out << pad << value[k].dump() << (k + 1 < value.size() ? ",\n" : "\n");
    }
    out << close_pad << ']';
  } else {
    out << value.dump();
  }
}

}  // namespace

void save_recording(const Recording& recording, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_pretty(out, to_json(recording), 0);
  out << '\n';
}

std::vector<Recording> load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no recordings in " + dir.string());

  std::vector<std::pair<Recording, std::filesystem::path>> loaded;
  std::ostringstream errors;
  std::size_t error_count = 0;
  for (const auto& file : files) {
    try {
      loaded.emplace_back(load_recording(file), file);
    } catch (const DataError& e) {
      ++error_count;
      errors << "\n  " << e.what();
    }
  }

  std::map<std::string, std::filesystem::path> seen;
  for (const auto& [rec, file] : loaded) {
    auto [it, inserted] = seen.emplace(rec.recording_id, file);
    if (!inserted) {
      ++error_count;
      errors << "\n  duplicate recording_id '" << rec.recording_id << "' in " << it->second.filename().string()
             << " and " << file.filename().string();
    }
  }
  if (error_count > 0) {
    throw DataError(std::to_string(error_count) + " error(s) loading " + dir.string() + ":" + errors.str());
  }

  std::sort(loaded.begin(), loaded.end(),
            [](const auto& a, const auto& b) { return a.first.recording_id < b.first.recording_id; });
  std::vector<Recording> out;
  out.reserve(loaded.size());
  for (auto& [rec, file] : loaded) out.push_back(std::move(rec));
  return out;
}

}  // namespace speechmark
