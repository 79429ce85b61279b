#include "microstyle/corpus.h"

#include <set>

#include "microstyle/distribution.h"
#include "microstyle/error.h"

namespace microstyle {

namespace {

bool IsBlank(const std::string &text) {
  return text.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
}

StyleScores ParseScoreObject(const Json &obj, const std::string &id, std::size_t line) {
  if (!obj.is_object()) {
    throw Error(ErrorKind::kMalformedLine, "line " + std::to_string(line) + ": scores must be an object");
  }
  StyleScores scores;
  for (const auto &[style, value] : obj.items()) {
    if (!value.is_number()) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line) + ": score '" + style + "' is not a number");
    }
    double v = value.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kScoreOutOfRange, id + " " + style + " " + value.dump());
    }
    scores[style] = v;
  }
  return scores;
}

}  // namespace

std::vector<SentenceRecord> IngestSentences(const std::filesystem::path &path) {
  std::vector<SentenceRecord> records;
  std::set<std::string> seen;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    SentenceRecord rec;
    rec.id = RequireString(obj, "id", line);
    rec.text = RequireString(obj, "text", line);
    if (rec.id.empty()) {
      throw Error(ErrorKind::kMalformedLine, "line " + std::to_string(line) + ": empty id");
    }
    if (IsBlank(rec.text)) throw Error(ErrorKind::kEmptyText, rec.id);
    if (!seen.insert(rec.id).second) throw Error(ErrorKind::kDuplicateId, rec.id);
    if (auto it = obj.find("scores"); it != obj.end()) {
      rec.scores = ParseScoreObject(*it, rec.id, line);
    }
    records.push_back(std::move(rec));
  });
  return records;
}

OrderedJson SentenceToJson(const SentenceRecord &record) {
  OrderedJson row;
  row["id"] = record.id;
  row["text"] = record.text;
  if (!record.scores.empty()) {
    OrderedJson scores = OrderedJson::object();
    for (const auto &[style, v] : record.scores) scores[style] = v;
    row["scores"] = std::move(scores);
  }
  return row;
}

void WriteSentences(const std::filesystem::path &path,
                    const std::vector<SentenceRecord> &records) {
  std::vector<OrderedJson> rows;
  rows.reserve(records.size());
  for (const auto &r : records) rows.push_back(SentenceToJson(r));
  WriteJsonLines(path, rows);
}

RecordIndex IndexById(const std::vector<SentenceRecord> &records) {
  RecordIndex index;
  for (const auto &r : records) {
    if (!index.emplace(r.id, &r).second) throw Error(ErrorKind::kDuplicateId, r.id);
  }
  return index;
}

const SentenceRecord &LookUp(const RecordIndex &index, const std::string &id) {
  auto it = index.find(id);
  if (it == index.end()) throw Error(ErrorKind::kUnknownId, id);
  return *it->second;
}

std::map<std::string, StyleScores> ReadScoreFile(const std::filesystem::path &path) {
  std::map<std::string, StyleScores> out;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    std::string id = RequireString(obj, "id", line);
    auto styles = obj.find("styles");
    if (styles == obj.end()) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line) + ": missing 'styles' object");
    }
    if (out.count(id)) throw Error(ErrorKind::kDuplicateId, id);
    out.emplace(id, ParseScoreObject(*styles, id, line));
  });
  return out;
}

void WriteScoreFile(const std::filesystem::path &path,
                    const std::vector<std::pair<std::string, StyleScores>> &rows) {
  std::vector<OrderedJson> lines;
  for (const auto &[id, scores] : rows) {
    OrderedJson row;
    row["id"] = id;
    OrderedJson styles = OrderedJson::object();
    for (const auto &[style, v] : scores) styles[style] = v;
    row["styles"] = std::move(styles);
    lines.push_back(std::move(row));
  }
  WriteJsonLines(path, lines);
}

void AttachResult::RequireComplete() const {
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissingScore, missing.front().id + " " + missing.front().style);
  }
}

std::vector<SentenceRecord> AttachResult::ScoredOnly() const {
  std::set<std::string> incomplete;
  for (const auto &m : missing) incomplete.insert(m.id);
  std::vector<SentenceRecord> out;
  for (const auto &r : records) {
    if (!incomplete.count(r.id)) out.push_back(r);
  }
  return out;
}

AttachResult AttachScores(const std::vector<SentenceRecord> &records,
                          const std::map<std::string, StyleScores> &scores,
                          const std::vector<std::string> &required_styles) {
  if (required_styles.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "no required styles for score join");
  }
  AttachResult result;
  result.records.reserve(records.size());
  for (const auto &record : records) {
    SentenceRecord joined = record;
    if (auto row = scores.find(record.id); row != scores.end()) {
      for (const auto &[style, v] : row->second) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw Error(ErrorKind::kScoreOutOfRange,
                      record.id + " " + style + " " + std::to_string(v));
        }
        joined.scores[style] = v;
      }
    }
    for (const auto &style : required_styles) {
      if (!joined.scores.count(style)) result.missing.push_back({record.id, style});
    }
    result.records.push_back(std::move(joined));
  }
  return result;
}

AttachResult AttachScores(const std::vector<SentenceRecord> &records,
                          const std::filesystem::path &score_path,
                          const std::vector<std::string> &required_styles) {
  return AttachScores(records, ReadScoreFile(score_path), required_styles);
}

std::vector<PairRecord> ReadPairs(const std::filesystem::path &path) {
  std::vector<PairRecord> pairs;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    PairRecord pair;
    pair.anchor_id = RequireString(obj, "anchor_id", line);
    auto cands = obj.find("candidate_ids");
    if (cands == obj.end() || !cands->is_array()) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line) + ": missing 'candidate_ids' array");
    }
    for (const auto &c : *cands) {
      if (!c.is_string()) {
        throw Error(ErrorKind::kMalformedLine,
                    "line " + std::to_string(line) + ": candidate ids must be strings");
      }
      pair.candidate_ids.push_back(c.get<std::string>());
    }
    if (auto sel = obj.find("selected_id"); sel != obj.end() && !sel->is_null()) {
      pair.selected_id = RequireString(obj, "selected_id", line);
    }
    pairs.push_back(std::move(pair));
  });
  return pairs;
}

void WritePairs(const std::filesystem::path &path, const std::vector<PairRecord> &pairs) {
  std::vector<OrderedJson> rows;
  for (const auto &p : pairs) {
    OrderedJson row;
    row["anchor_id"] = p.anchor_id;
    row["candidate_ids"] = p.candidate_ids;
    if (p.selected_id) row["selected_id"] = *p.selected_id;
    rows.push_back(std::move(row));
  }
  WriteJsonLines(path, rows);
}

void ValidatePairs(const std::vector<PairRecord> &pairs, const RecordIndex &index) {
  for (const auto &p : pairs) {
    LookUp(index, p.anchor_id);
    for (const auto &c : p.candidate_ids) LookUp(index, c);
    if (p.selected_id) {
      bool member = false;
      for (const auto &c : p.candidate_ids) member = member || c == *p.selected_id;
      if (!member) {
        throw Error(ErrorKind::kUnselectedPair,
                    p.anchor_id + ": selected '" + *p.selected_id + "' is not a candidate");
      }
    }
  }
}

std::string_view DatasetModeName(DatasetMode mode) {
  switch (mode) {
    case DatasetMode::kRaw: return "raw";
    case DatasetMode::kBalanced: return "balanced";
    case DatasetMode::kSkewed: return "skewed";
  }
  return "raw";
}

DatasetMode ParseDatasetMode(std::string_view name) {
  if (name == "raw") return DatasetMode::kRaw;
  if (name == "balanced") return DatasetMode::kBalanced;
  if (name == "skewed") return DatasetMode::kSkewed;
  throw Error(ErrorKind::kInvalidConfig, "unknown mode '" + std::string(name) + "'");
}

DatasetManifest BuildManifest(const std::string &corpus_name,
                              const std::vector<SentenceRecord> &records,
                              const StyleSpaceConfig &config, DatasetMode mode,
                              std::uint64_t seed) {
  DatasetManifest m;
  m.corpus_name = corpus_name;
  m.micro_styles = config.names();
  m.seed = seed;
  m.mode = mode;
  m.record_count = records.size();
  if (!records.empty()) {
    m.per_combination_counts = Tally(records, config);
    m.std_dev_of_counts = StdDevReport(m.per_combination_counts);
  }
  return m;
}

OrderedJson ManifestToJson(const DatasetManifest &m) {
  OrderedJson doc;
  doc["corpus_name"] = m.corpus_name;
  doc["micro_styles"] = m.micro_styles;
  doc["record_count"] = m.record_count;
  OrderedJson counts = OrderedJson::object();
  for (const auto &[key, n] : m.per_combination_counts) counts[key] = n;
  doc["per_combination_counts"] = std::move(counts);
  doc["seed"] = m.seed;
  doc["mode"] = DatasetModeName(m.mode);
  doc["std_dev_of_counts"] = m.std_dev_of_counts;
  return doc;
}

void WriteManifest(const std::filesystem::path &path, const DatasetManifest &manifest) {
  WriteJsonFile(path, ManifestToJson(manifest));
}

}  // namespace microstyle
