#include "speechmark/align.hpp"

#include "speechmark/error.hpp"
#include "speechmark/text.hpp"

namespace speechmark {

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Match: return "Match";
    case EditKind::Substitute: return "Substitute";
    case EditKind::DeleteAcoustic: return "DeleteAcoustic";
    case EditKind::InsertClean: return "InsertClean";
  }
  return "Match";
}

std::size_t edit_cost(std::span<const AlignOp> ops) {
  std::size_t cost = 0;
  for (const auto& op : ops) {
    if (op.kind != EditKind::Match) ++cost;
  }
  return cost;
}

std::size_t edit_cost(const AlignedTranscript& aligned) { return edit_cost(aligned.ops); }

AlignedTranscript align(const AcousticTranscript& acoustic, const CleanTranscript& clean,
                        std::size_t full_table_limit) {
  std::vector<std::string> a;
  a.reserve(acoustic.tokens.size());
  for (const auto& tok : acoustic.tokens) a.push_back(standardize(tok.text));
  std::vector<std::string> b;
  b.reserve(clean.words.size());
  for (const auto& w : clean.words) b.push_back(standardize(w.text));

  if (a.empty()) throw DataError("cannot align: acoustic transcript is empty");
  if (b.empty()) throw DataError("cannot align: clean transcript is empty");

  AlignedTranscript out;
  out.ops = edit_script<std::string>(a, b, full_table_limit);
  out.word_timings.assign(b.size(), std::nullopt);
  for (const auto& op : out.ops) {
    switch (op.kind) {
      case EditKind::Match:
      case EditKind::Substitute: {
        const auto& tok = acoustic.tokens[*op.acoustic_index];
        out.word_timings[*op.clean_index] = WordTiming{tok.start, tok.end};
        break;
      }
      case EditKind::DeleteAcoustic:
        out.unmatched_acoustic.push_back(*op.acoustic_index);
        break;
      case EditKind::InsertClean:
        break;
    }
  }
  return out;
}

nlohmann::json to_json(const AlignOp& op) {
  nlohmann::json j;
  j["op"] = std::string(to_string(op.kind));
  j["acoustic"] = op.acoustic_index ? nlohmann::json(*op.acoustic_index) : nlohmann::json(nullptr);
  j["clean"] = op.clean_index ? nlohmann::json(*op.clean_index) : nlohmann::json(nullptr);
  return j;
}

}  // namespace speechmark
