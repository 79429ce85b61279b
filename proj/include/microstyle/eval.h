#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "microstyle/distribution.h"
#include "microstyle/jsonl.h"
#include "microstyle/pair_pipeline.h"
#include "microstyle/record.h"
#include "microstyle/style_space.h"

namespace microstyle {

using Tokens = std::vector<std::string>;
using Embedding = std::vector<double>;
using EmbeddingTable = std::map<std::string, Embedding>;

// Lowercases, splits on whitespace, then peels trailing ASCII punctuation off
// each word as separate one-character tokens ("sat." -> "sat", ".").
Tokens Tokenize(std::string_view text);

// Corpus BLEU, one reference per candidate, clipped n-gram precisions for
// n = 1..max_n, uniform weights, brevity penalty exp(1 - r/c) when c <= r.
// Unsmoothed: any zero precision gives 0. Throws LengthMismatch, EmptyCorpus.
double Bleu(const std::vector<Tokens> &candidates, const std::vector<Tokens> &references,
            int max_n = 4);

// Per-sentence diagnostic BLEU with add-one smoothing on n > 1 precisions.
double SentenceBleu(const Tokens &candidate, const Tokens &reference, int max_n = 4);

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch and
// ZeroVector (norm <= 1e-12).
double CosineSimilarity(const Embedding &a, const Embedding &b);

// Exact earth mover's distance between the normalized bag-of-words of the two
// token lists under Euclidean ground cost. Tokens without an embedding are
// dropped first; EmptyAfterFilter if either side ends up empty.
double Wmd(const Tokens &a, const Tokens &b, const EmbeddingTable &embeddings);

// Minimum-cost transport between integer supplies and demands with equal
// totals. Returns the total cost. Used by Wmd after scaling the two
// distributions to a common integer mass.
double TransportCost(const std::vector<std::uint64_t> &supply,
                     const std::vector<std::uint64_t> &demand,
                     const std::vector<std::vector<double>> &cost);

// {"key": ..., "vector": [...]} per line ("id" or "token" accepted in place
// of "key"). All vectors must share one dimension.
EmbeddingTable ReadEmbeddings(const std::filesystem::path &path);

struct TransferredRecord {
  std::string id;
  std::string source_id;
  std::string text;
  BucketVector intended_buckets;
  std::optional<StyleScores> measured_scores;
  std::optional<std::string> reference;
};

// {"id", "source_id", "text", "intended": {style: bucket token}} per line,
// optional "scores" (measured) and "reference" fields.
std::vector<TransferredRecord> ReadTransferred(const std::filesystem::path &path,
                                               const StyleSpaceConfig &config);

struct SuccessReport {
  double s_c = 0.0;
  std::vector<std::pair<std::string, double>> per_style_match;
};

// Fraction of records whose measured bucket vector equals the intended one in
// every style, plus per-style match rates. Throws EmptyInput and
// UnscoredRecord.
SuccessReport SuccessRatio(const std::vector<TransferredRecord> &records,
                           const StyleSpaceConfig &config);

struct MetricTuple {
  std::optional<double> perplexity;
  std::optional<double> adversarial;
  std::optional<double> bleu;
  std::optional<double> cosine;
  std::optional<double> wmd;
};

inline constexpr std::string_view kMetricNames[] = {"perplexity", "adversarial", "bleu",
                                                    "cosine", "wmd"};
std::optional<double> MetricByName(const MetricTuple &m, std::string_view name);

struct CombinationMetrics {
  CombinationKey key;
  std::size_t count = 0;
  MetricTuple means;
};

struct CombinationAggregate {
  std::vector<CombinationMetrics> rows;  // canonical key order, empty keys omitted
  std::vector<std::string> notices;      // one per omitted key
};

// Arithmetic mean of every present metric within each intended combination.
// Throws MissingMetric for a record without a metric tuple.
CombinationAggregate AggregateByCombination(const std::vector<TransferredRecord> &records,
                                            const std::map<std::string, MetricTuple> &metrics,
                                            const StyleSpaceConfig &config);

// Percentage of records whose measured combination equals each key, for every
// enumerated key. Throws EmptyInput and UnscoredRecord.
std::vector<std::pair<CombinationKey, double>> RepresentationReport(
    const std::vector<TransferredRecord> &records, const StyleSpaceConfig &config);

// Same, over plain scored sentences (used when comparing datasets).
std::vector<std::pair<CombinationKey, double>> RepresentationReport(
    const std::vector<SentenceRecord> &records, const StyleSpaceConfig &config);

enum class ReferenceColumn { kSource, kReference };
std::string_view ReferenceColumnName(ReferenceColumn column);
ReferenceColumn ParseReferenceColumn(std::string_view name);

struct EvalInputs {
  std::vector<TransferredRecord> records;
  // Source sentence texts keyed by id; needed for ReferenceColumn::kSource.
  std::map<std::string, std::string> source_texts;
  ReferenceColumn reference_column = ReferenceColumn::kSource;
  // Sentence embeddings keyed by record id and source id, plus token
  // embeddings for WMD. Optional.
  std::optional<EmbeddingTable> embeddings;
  std::optional<FluencyTable> fluency;
};

struct EvalReport {
  std::size_t record_count = 0;
  std::string reference_column;
  SuccessReport success;
  double bleu = 0.0;
  MetricTuple means;
  std::map<std::string, MetricTuple> per_record;
  CombinationAggregate per_combination;
  std::vector<std::pair<CombinationKey, double>> representation;
};

// Runs the full metric suite. Cosine compares the embeddings of the
// transferred id and its source id; BLEU and WMD compare against the chosen
// reference column.
EvalReport Evaluate(const EvalInputs &inputs, const StyleSpaceConfig &config);

OrderedJson EvalReportToJson(const EvalReport &report);
// combination,metric,value,count: one row per combination x metric, plus
// "all" rows for the corpus-level values.
std::string EvalReportToCsv(const EvalReport &report);

// Per-record metric tuples: {"id", "perplexity", ...} per line; absent
// metrics are omitted.
void WriteMetrics(const std::filesystem::path &path,
                  const std::map<std::string, MetricTuple> &metrics);
std::map<std::string, MetricTuple> ReadMetrics(const std::filesystem::path &path);

}  // namespace microstyle
