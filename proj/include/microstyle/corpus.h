#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "microstyle/jsonl.h"
#include "microstyle/record.h"
#include "microstyle/style_space.h"

namespace microstyle {

// ---------------------------------------------------------------------------
// Sentence files: one JSON object per line, {"id": ..., "text": ...} with an
// optional "scores" object once the corpus has been scored.
// ---------------------------------------------------------------------------

// Strict: aborts on the first malformed line (MalformedLine with the 1-based
// line number), repeated id (DuplicateId) or blank text (EmptyText).
std::vector<SentenceRecord> IngestSentences(const std::filesystem::path &path);
void WriteSentences(const std::filesystem::path &path,
                    const std::vector<SentenceRecord> &records);

OrderedJson SentenceToJson(const SentenceRecord &record);

// Index of records by id; the returned pointers borrow from `records`.
using RecordIndex = std::map<std::string, const SentenceRecord *>;
RecordIndex IndexById(const std::vector<SentenceRecord> &records);
const SentenceRecord &LookUp(const RecordIndex &index, const std::string &id);

// ---------------------------------------------------------------------------
// Score files: {"id": ..., "styles": {"formality": 0.8, ...}} per line.
// ---------------------------------------------------------------------------

// Parses a score file, validating every value lies in [0, 1]
// (ScoreOutOfRange). Later rows for the same id are a DuplicateId error.
std::map<std::string, StyleScores> ReadScoreFile(const std::filesystem::path &path);
void WriteScoreFile(const std::filesystem::path &path,
                    const std::vector<std::pair<std::string, StyleScores>> &rows);

struct MissingScoreReport {
  std::string id;
  std::string style;
};

struct AttachResult {
  // Every input record, in input order, with the available scores merged in.
  std::vector<SentenceRecord> records;
  // One entry per (record, required style) pair that has no score.
  std::vector<MissingScoreReport> missing;

  bool complete() const { return missing.empty(); }
  // Throws MissingScore for the first missing entry.
  void RequireComplete() const;
  // Records that have every required score.
  std::vector<SentenceRecord> ScoredOnly() const;
};

// Lenient join: missing rows are reported in AttachResult::missing rather than
// aborting. Out-of-range values still abort with ScoreOutOfRange.
AttachResult AttachScores(const std::vector<SentenceRecord> &records,
                          const std::map<std::string, StyleScores> &scores,
                          const std::vector<std::string> &required_styles);
AttachResult AttachScores(const std::vector<SentenceRecord> &records,
                          const std::filesystem::path &score_path,
                          const std::vector<std::string> &required_styles);

// ---------------------------------------------------------------------------
// Pair files: {"anchor_id": ..., "candidate_ids": [...], "selected_id": ...}.
// ---------------------------------------------------------------------------

std::vector<PairRecord> ReadPairs(const std::filesystem::path &path);
void WritePairs(const std::filesystem::path &path, const std::vector<PairRecord> &pairs);

// Throws UnknownId when an anchor or candidate is missing from `index`, and
// UnselectedPair when a selection is not one of the candidates.
void ValidatePairs(const std::vector<PairRecord> &pairs, const RecordIndex &index);

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

enum class DatasetMode { kRaw, kBalanced, kSkewed };
std::string_view DatasetModeName(DatasetMode mode);
DatasetMode ParseDatasetMode(std::string_view name);

struct DatasetManifest {
  std::string corpus_name;
  std::vector<std::string> micro_styles;
  std::uint64_t record_count = 0;
  // Every enumerated key in canonical order (zeros included); empty when
  // record_count is 0.
  std::vector<std::pair<CombinationKey, std::uint64_t>> per_combination_counts;
  std::uint64_t seed = 0;
  DatasetMode mode = DatasetMode::kRaw;
  double std_dev_of_counts = 0.0;
};

// Tallies `records` per combination. Throws UnscoredRecord for any record
// lacking a configured style.
DatasetManifest BuildManifest(const std::string &corpus_name,
                              const std::vector<SentenceRecord> &records,
                              const StyleSpaceConfig &config, DatasetMode mode,
                              std::uint64_t seed);

// Keys in field declaration order.
OrderedJson ManifestToJson(const DatasetManifest &manifest);
void WriteManifest(const std::filesystem::path &path, const DatasetManifest &manifest);

}  // namespace microstyle
