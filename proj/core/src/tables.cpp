#include "speechmark/tables.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "speechmark/error.hpp"

namespace speechmark {
namespace {

const std::vector<std::string> kIdentityColumns{"recording_id", "subject_id", "label", "aq"};

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << quote(cells[i]);
  }
  out << '\n';
}

double parse_double(const std::string& text, const std::string& column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw DataError("column '" + column + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

std::vector<std::string> identity_cells(const std::string& recording_id, const std::string& subject_id,
                                        const std::optional<ClassLabel>& label, const std::optional<double>& aq) {
  return {recording_id, subject_id, label ? std::string(to_string(*label)) : std::string(),
          aq ? format_number(*aq) : std::string()};
}

struct Identity {
  std::string recording_id;
  std::string subject_id;
  std::optional<ClassLabel> label;
  std::optional<double> aq;
};

Identity parse_identity(const std::vector<std::string>& cells) {
  Identity id{cells[0], cells[1], std::nullopt, std::nullopt};
  if (!cells[2].empty()) {
    id.label = parse_class_label(cells[2]);
    if (!id.label) throw DataError("column 'label': unknown label '" + cells[2] + "'");
  }
  if (!cells[3].empty()) id.aq = parse_double(cells[3], "aq");
  return id;
}

std::vector<std::string> read_header(std::istream& in, std::size_t fixed) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV is empty");
  auto header = split_csv_line(line);
  if (header.size() < fixed) throw DataError("CSV header is too short");
  for (std::size_t i = 0; i < kIdentityColumns.size(); ++i) {
    if (header[i] != kIdentityColumns[i]) throw DataError("CSV header: expected column '" + kIdentityColumns[i] + "'");
  }
  return header;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw DataError("CSV: unterminated quoted field");
  cells.push_back(std::move(cell));
  return cells;
}

void write_scores_csv(std::ostream& out, std::span<const RecordingScores> rows, const ScoreVocabulary& vocabulary) {
  std::vector<std::string> header = kIdentityColumns;
  header.push_back("chunks");
  for (const auto& name : vocabulary.names()) header.push_back(name);
  for (const auto& name : vocabulary.names()) header.push_back("missing_" + name);
  write_row(out, header);
  for (const auto& r : rows) {
    auto cells = identity_cells(r.recording_id, r.subject_id, r.label, r.aq);
    cells.push_back(std::to_string(r.chunks));
    for (const auto& name : vocabulary.names()) {
      const auto v = r.scores.get(name);
      cells.push_back(v ? format_number(*v) : std::string());
    }
    for (const auto& name : vocabulary.names()) cells.push_back(r.scores.has(name) ? "0" : "1");
    write_row(out, cells);
  }
}

std::vector<RecordingScores> read_scores_csv(std::istream& in, const ScoreVocabulary& vocabulary) {
  const auto header = read_header(in, kIdentityColumns.size() + 1);
  const auto& names = vocabulary.names();
  if (header.size() != kIdentityColumns.size() + 1 + 2 * names.size()) {
    throw DataError("scores CSV: column count does not match the score vocabulary");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (header[5 + i] != names[i]) throw DataError("scores CSV: expected column '" + names[i] + "'");
  }
  std::vector<RecordingScores> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw DataError("scores CSV: row has " + std::to_string(cells.size()) + " cells");
    const auto id = parse_identity(cells);
    RecordingScores r;
    r.recording_id = id.recording_id;
    r.subject_id = id.subject_id;
    r.label = id.label;
    r.aq = id.aq;
    r.chunks = static_cast<std::size_t>(parse_double(cells[4], "chunks"));
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (cells[5 + i].empty()) r.scores.mark_missing(names[i]);
      else r.scores.set(names[i], parse_double(cells[5 + i], names[i]));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_features_csv(std::ostream& out, std::span<const FeatureVector> rows, std::span<const std::string> names) {
  std::vector<std::string> header = kIdentityColumns;
  header.insert(header.end(), names.begin(), names.end());
  write_row(out, header);
  for (const auto& r : rows) {
    auto cells = identity_cells(r.recording_id, r.subject_id, r.label, r.aq);
    for (const auto& name : names) cells.push_back(format_number(r.values.at(name)));
    write_row(out, cells);
  }
}

FeatureTable read_features_csv(std::istream& in) {
  const auto header = read_header(in, kIdentityColumns.size());
  FeatureTable table;
  table.names.assign(header.begin() + static_cast<std::ptrdiff_t>(kIdentityColumns.size()), header.end());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError("features CSV: row has " + std::to_string(cells.size()) + " cells");
    }
    const auto id = parse_identity(cells);
    FeatureVector f{id.recording_id, id.subject_id, id.label, id.aq, {}};
    for (std::size_t i = 0; i < table.names.size(); ++i) {
      f.values[table.names[i]] = parse_double(cells[kIdentityColumns.size() + i], table.names[i]);
    }
    table.rows.push_back(std::move(f));
  }
  return table;
}

}  // namespace speechmark
