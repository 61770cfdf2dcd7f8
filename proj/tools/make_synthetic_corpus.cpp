// Generates the synthetic fixture corpus: a healthy reference set and a
// 40-recording labeled set with control and impaired speakers.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "speechmark/corpus.hpp"
#include "speechmark/text.hpp"

namespace sm = speechmark;

namespace {

struct Entry {
  const char* word;
  sm::PosTag pos;
  const char* lemma;
};

using sm::PosTag;

const std::vector<Entry> kNouns{
    {"book", PosTag::Noun, "book"},       {"boy", PosTag::Noun, "boy"},         {"brother", PosTag::Noun, "brother"},
    {"car", PosTag::Noun, "car"},         {"child", PosTag::Noun, "child"},     {"city", PosTag::Noun, "city"},
    {"day", PosTag::Noun, "day"},         {"doctor", PosTag::Noun, "doctor"},   {"dog", PosTag::Noun, "dog"},
    {"door", PosTag::Noun, "door"},       {"family", PosTag::Noun, "family"},   {"father", PosTag::Noun, "father"},
    {"friend", PosTag::Noun, "friend"},   {"girl", PosTag::Noun, "girl"},       {"hand", PosTag::Noun, "hand"},
    {"head", PosTag::Noun, "head"},       {"home", PosTag::Noun, "home"},       {"hospital", PosTag::Noun, "hospital"},
    {"house", PosTag::Noun, "house"},     {"man", PosTag::Noun, "man"},         {"morning", PosTag::Noun, "morning"},
    {"mother", PosTag::Noun, "mother"},   {"night", PosTag::Noun, "night"},     {"people", PosTag::Noun, "people"},
    {"place", PosTag::Noun, "place"},     {"school", PosTag::Noun, "school"},   {"story", PosTag::Noun, "story"},
    {"thing", PosTag::Noun, "thing"},     {"time", PosTag::Noun, "time"},       {"water", PosTag::Noun, "water"},
    {"wife", PosTag::Noun, "wife"},       {"woman", PosTag::Noun, "woman"},     {"word", PosTag::Noun, "word"},
    {"work", PosTag::Noun, "work"},       {"year", PosTag::Noun, "year"},
};

const std::vector<Entry> kVerbs{
    {"ask", PosTag::Verb, "ask"},     {"call", PosTag::Verb, "call"},   {"came", PosTag::Verb, "come"},
    {"eat", PosTag::Verb, "eat"},     {"find", PosTag::Verb, "find"},   {"get", PosTag::Verb, "get"},
    {"give", PosTag::Verb, "give"},   {"help", PosTag::Verb, "help"},   {"know", PosTag::Verb, "know"},
    {"like", PosTag::Verb, "like"},   {"look", PosTag::Verb, "look"},   {"made", PosTag::Verb, "make"},
    {"put", PosTag::Verb, "put"},     {"said", PosTag::Verb, "say"},    {"saw", PosTag::Verb, "see"},
    {"speak", PosTag::Verb, "speak"}, {"take", PosTag::Verb, "take"},   {"talk", PosTag::Verb, "talk"},
    {"tell", PosTag::Verb, "tell"},   {"think", PosTag::Verb, "think"}, {"told", PosTag::Verb, "tell"},
    {"took", PosTag::Verb, "take"},   {"walk", PosTag::Verb, "walk"},   {"want", PosTag::Verb, "want"},
    {"went", PosTag::Verb, "go"},
};

const std::vector<Entry> kAdjectives{
    {"bad", PosTag::Adj, "bad"},   {"big", PosTag::Adj, "big"},     {"good", PosTag::Adj, "good"},
    {"great", PosTag::Adj, "great"}, {"little", PosTag::Adj, "little"}, {"long", PosTag::Adj, "long"},
    {"new", PosTag::Adj, "new"},   {"old", PosTag::Adj, "old"},     {"other", PosTag::Adj, "other"},
    {"first", PosTag::Adj, "first"}, {"right", PosTag::Adj, "right"},
};

const std::vector<Entry> kDeterminers{
    {"a", PosTag::Det, "a"},       {"the", PosTag::Det, "the"},   {"this", PosTag::Det, "this"},
    {"that", PosTag::Det, "that"}, {"some", PosTag::Det, "some"}, {"every", PosTag::Det, "every"},
};

const std::vector<Entry> kPronouns{
    {"i", PosTag::Pron, "i"},     {"he", PosTag::Pron, "he"},   {"she", PosTag::Pron, "she"},
    {"we", PosTag::Pron, "we"},   {"they", PosTag::Pron, "they"}, {"you", PosTag::Pron, "you"},
};

const std::vector<Entry> kAdpositions{
    {"about", PosTag::Adp, "about"}, {"after", PosTag::Adp, "after"}, {"at", PosTag::Adp, "at"},
    {"for", PosTag::Adp, "for"},     {"from", PosTag::Adp, "from"},   {"in", PosTag::Adp, "in"},
    {"into", PosTag::Adp, "into"},   {"of", PosTag::Adp, "of"},       {"on", PosTag::Adp, "on"},
    {"to", PosTag::Adp, "to"},       {"with", PosTag::Adp, "with"},
};

const std::vector<Entry> kAdverbs{
    {"again", PosTag::Adv, "again"}, {"always", PosTag::Adv, "always"}, {"back", PosTag::Adv, "back"},
    {"here", PosTag::Adv, "here"},   {"never", PosTag::Adv, "never"},   {"now", PosTag::Adv, "now"},
    {"really", PosTag::Adv, "really"}, {"still", PosTag::Adv, "still"}, {"then", PosTag::Adv, "then"},
    {"very", PosTag::Adv, "very"},
};

const std::vector<Entry> kConjunctions{
    {"and", PosTag::Conj, "and"}, {"but", PosTag::Conj, "but"}, {"because", PosTag::Conj, "because"},
    {"so", PosTag::Conj, "so"},
};

// Raw engine output only; the std distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::int64_t ticks(std::int64_t lo, std::int64_t hi) { return lo + static_cast<std::int64_t>(index(hi - lo + 1)); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// Speaker profile; severity 0 is healthy, 1 is the most impaired.
struct Profile {
  double severity = 0.0;
  std::size_t min_sentence = 12;
  std::size_t max_sentence = 24;
  double vocabulary_fraction = 1.0;
  double substitution = 0.02;
  double deletion = 0.01;
  double filler = 0.02;
  double pause = 0.04;
  std::int64_t pause_lo = 18;
  std::int64_t pause_hi = 35;
  std::int64_t slow_ticks = 0;
  double content_bias = 0.0;
};

Profile profile_for(double severity, sm::ClassLabel label = sm::ClassLabel::Control) {
  Profile p;
  p.severity = severity;
  if (severity <= 0.0) return p;
  p.min_sentence = 5;
  p.max_sentence = 12;
  p.vocabulary_fraction = 0.55 - 0.3 * severity;
  p.substitution = 0.08 + 0.12 * severity;
  p.deletion = 0.03 + 0.05 * severity;
  p.filler = 0.08 + 0.12 * severity;
  p.pause = 0.18 + 0.2 * severity;
  p.pause_lo = 25;
  p.pause_hi = 60 + static_cast<std::int64_t>(50 * severity);
  switch (label) {
    case sm::ClassLabel::Anomic:
      p.vocabulary_fraction *= 0.6;
      p.filler += 0.1;
      break;
    case sm::ClassLabel::Broca:
      p.min_sentence = 3;
      p.max_sentence = 7;
      p.pause += 0.15;
      p.slow_ticks = 6;
      p.content_bias = 0.6;
      break;
    case sm::ClassLabel::Wernicke:
      p.min_sentence = 10;
      p.max_sentence = 20;
      p.pause *= 0.5;
      p.substitution += 0.15;
      p.vocabulary_fraction = 0.8;
      break;
    default:
      break;
  }
  return p;
}

const Entry& pick(Rng& rng, const std::vector<Entry>& bank, double fraction) {
  const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(static_cast<double>(bank.size()) * fraction));
  return bank[rng.index(std::min(n, bank.size()))];
}

// One sentence as a sequence of phrase-shaped POS groups.
std::vector<const Entry*> make_sentence(Rng& rng, const Profile& p, std::size_t length) {
  std::vector<const Entry*> out;
  const double f = p.vocabulary_fraction;
  while (out.size() < length) {
    if (rng.chance(p.content_bias)) {
      out.push_back(rng.chance(0.7) ? &pick(rng, kNouns, f) : &pick(rng, kVerbs, f));
      continue;
    }
    switch (rng.index(5)) {
      case 0:
        out.push_back(&pick(rng, kPronouns, 1.0));
        out.push_back(&pick(rng, kVerbs, f));
        break;
      case 1:
        out.push_back(&pick(rng, kDeterminers, 1.0));
        if (rng.chance(0.5)) out.push_back(&pick(rng, kAdjectives, f));
        out.push_back(&pick(rng, kNouns, f));
        break;
      case 2:
        out.push_back(&pick(rng, kAdpositions, 1.0));
        out.push_back(&pick(rng, kDeterminers, 1.0));
        out.push_back(&pick(rng, kNouns, f));
        break;
      case 3:
        out.push_back(&pick(rng, kAdverbs, f));
        break;
      default:
        if (!out.empty()) out.push_back(&pick(rng, kConjunctions, 1.0));
        break;
    }
  }
  out.resize(length);
  return out;
}

std::string surface(const Entry& e, bool first, bool last, bool comma) {
  std::string text = e.word;
  if (text == "i" || first) text[0] = static_cast<char>(text[0] - 'a' + 'A');
  if (last) text += '.';
  else if (comma) text += ',';
  return text;
}

double seconds(std::int64_t ticks) { return static_cast<double>(ticks) / 50.0; }

sm::Recording make_recording(Rng& rng, const std::string& id, const std::string& subject, const Profile& p,
                             const std::vector<std::size_t>& sentence_lengths) {
  sm::Recording rec;
  rec.recording_id = id;
  rec.subject_id = subject;

  std::int64_t t = rng.ticks(5, 20);
  std::vector<double> grammar;
  for (std::size_t s = 0; s < sentence_lengths.size(); ++s) {
    const auto sentence = make_sentence(rng, p, sentence_lengths[s]);
    for (std::size_t k = 0; k < sentence.size(); ++k) {
      const Entry& e = *sentence[k];
      const bool last = k + 1 == sentence.size();
      sm::CleanWord w;
      w.text = surface(e, k == 0, last, !last && rng.chance(0.05));
      w.sentence_index = s;
      w.pos = e.pos;
      w.lemma = e.lemma;
      rec.clean.words.push_back(std::move(w));

      if (rng.chance(p.filler)) {
        const auto len = rng.ticks(10, 20);
        rec.acoustic.tokens.push_back({rng.chance(0.5) ? "uh" : "um", seconds(t), seconds(t + len)});
        t += len + rng.ticks(1, 4);
      }
      const auto duration = rng.ticks(8, 12) + p.slow_ticks + static_cast<std::int64_t>(std::string_view(e.word).size());
      if (!rng.chance(p.deletion)) {
        std::string text = e.word;
        if (rng.chance(p.substitution)) text = pick(rng, kNouns, 1.0).word;
        rec.acoustic.tokens.push_back({text, seconds(t), seconds(t + duration)});
      }
      t += duration;
      const bool pause = rng.chance(last ? p.pause * 2.0 : p.pause);
      t += pause ? rng.ticks(p.pause_lo, p.pause_hi) : rng.ticks(1, 5);
    }
    grammar.push_back(p.severity > 0.0 ? rng.uniform(0.75 - 0.45 * p.severity, 0.85 - 0.3 * p.severity)
                                       : rng.uniform(0.85, 0.99));
  }
  rec.acoustic.total_duration = seconds(t + 10);
  rec.clean.sentence_count = sentence_lengths.size();

  auto& ext = rec.clean.external_scores;
  ext.grammar_acceptance = grammar;
  ext.gpt2_perplexity = p.severity > 0.0 ? rng.uniform(70.0, 90.0) + 80.0 * p.severity : rng.uniform(30.0, 50.0);
  ext.ctrleval = p.severity > 0.0 ? rng.uniform(-4.8, -4.2) - p.severity : rng.uniform(-3.0, -2.4);
  ext.word_vector_coherence = p.severity > 0.0 ? rng.uniform(0.45, 0.6) - 0.2 * p.severity : rng.uniform(0.7, 0.85);
  return rec;
}

std::vector<std::size_t> sentence_plan(Rng& rng, const Profile& p, std::size_t min_words) {
  std::vector<std::size_t> lengths;
  std::size_t total = 0;
  while (total < min_words) {
    lengths.push_back(p.min_sentence + rng.index(p.max_sentence - p.min_sentence + 1));
    total += lengths.back();
  }
  return lengths;
}

std::string two_digits(std::size_t n) { return (n < 10 ? "0" : "") + std::to_string(n); }
std::string three_digits(std::size_t n) { return (n < 100 ? "0" : "") + two_digits(n); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic reference and labeled corpora."};
  std::filesystem::path out;
  std::uint64_t seed = 20240501;
  app.add_option("--out", out, "Output directory (reference/ and corpus/ are created)")->required();
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  const auto reference_dir = out / "reference";
  const auto corpus_dir = out / "corpus";
  std::filesystem::create_directories(reference_dir);
  std::filesystem::create_directories(corpus_dir);
  Rng rng(seed);
  const Profile healthy = profile_for(0.0);

  for (std::size_t i = 1; i <= 20; ++i) {
    const auto id = "healthy_" + three_digits(i);
    // The first reference recording is a single chunk of three 80-word sentences.
    const auto plan = i == 1 ? std::vector<std::size_t>{80, 80, 80} : sentence_plan(rng, healthy, 430 + rng.index(200));
    const auto rec = make_recording(rng, id, "h" + two_digits(i), healthy, plan);
    sm::validate(rec);
    sm::save_recording(rec, reference_dir / (id + ".json"));
  }

  const sm::ClassLabel subtypes[] = {sm::ClassLabel::Anomic, sm::ClassLabel::Broca, sm::ClassLabel::Wernicke};
  for (std::size_t s = 1; s <= 10; ++s) {
    const auto subject = "c" + two_digits(s);
    for (std::size_t r = 1; r <= 2; ++r) {
      auto rec = make_recording(rng, subject + "_r" + std::to_string(r), subject, healthy,
                                sentence_plan(rng, healthy, 430 + rng.index(150)));
      rec.label = sm::ClassLabel::Control;
      sm::validate(rec);
      sm::save_recording(rec, corpus_dir / (rec.recording_id + ".json"));
    }
  }
  for (std::size_t s = 1; s <= 10; ++s) {
    const auto subject = "a" + two_digits(s);
    const double aq = std::round(rng.uniform(35.0, 90.0) * 10.0) / 10.0;
    const double severity = (100.0 - aq) / 70.0;
    const auto label = subtypes[(s - 1) % 3];
    const Profile impaired = profile_for(severity, label);
    for (std::size_t r = 1; r <= 2; ++r) {
      auto rec = make_recording(rng, subject + "_r" + std::to_string(r), subject, impaired,
                                sentence_plan(rng, impaired, 430 + rng.index(150)));
      rec.label = label;
      rec.aq = aq;
      sm::validate(rec);
      sm::save_recording(rec, corpus_dir / (rec.recording_id + ".json"));
    }
  }
  std::cout << "wrote 20 reference and 40 labeled recordings under " << out.string() << "\n";
  return 0;
}
