#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "microstyle/corpus.h"
#include "microstyle/record.h"
#include "microstyle/style_space.h"

namespace microstyle {

inline constexpr double kDefaultMaxPerplexity = 365.0;
inline constexpr double kDefaultMinAdversarial = 0.1;

struct FluencyRecord {
  std::string id;
  double perplexity = 0.0;   // > 0
  double adversarial = 0.0;  // in [0, 1]
};

using FluencyTable = std::map<std::string, FluencyRecord>;

// {"id": ..., "perplexity": ..., "adversarial": ...} per line. Rejects
// non-positive perplexity and adversarial outside [0, 1] (MalformedLine).
FluencyTable ReadFluency(const std::filesystem::path &path);

// Style-score vector of `record` in configured style order.
std::vector<double> StyleVector(const SentenceRecord &record, const StyleSpaceConfig &config);

// 1 - cos(a, b); a vector with norm < 1e-12 has similarity 0 (distance 1).
double StyleDistance(const std::vector<double> &a, const std::vector<double> &b);

// Picks the candidate whose style vector is furthest (cosine distance) from
// the anchor's; ties go to the earliest candidate.
PairRecord SelectBestParaphrase(const PairRecord &pair, const RecordIndex &records,
                                const StyleSpaceConfig &config);

// Keeps pairs whose anchor and selected paraphrase differ in at least one
// style bucket. Order preserved.
std::vector<PairRecord> DiversityFilter(const std::vector<PairRecord> &pairs,
                                        const RecordIndex &records,
                                        const StyleSpaceConfig &config);

struct FluencyThresholds {
  double max_perplexity = kDefaultMaxPerplexity;
  double min_adversarial = kDefaultMinAdversarial;
};

// perplexity < max AND adversarial > min, both strict.
bool PassesFluency(const FluencyRecord &row, const FluencyThresholds &thresholds);

// Keeps records passing PassesFluency, order preserved. MissingFluency for
// a record without a fluency row.
std::vector<SentenceRecord> FluencyFilter(const std::vector<SentenceRecord> &records,
                                          const FluencyTable &fluency,
                                          const FluencyThresholds &thresholds = {});

enum class FluencyTarget { kAnchors, kParaphrases, kBoth };
std::string_view FluencyTargetName(FluencyTarget target);
FluencyTarget ParseFluencyTarget(std::string_view name);

// Applies the fluency filter to one or both sides of selected pairs: a pair
// survives when every checked sentence passes.
std::vector<PairRecord> FluencyFilterPairs(const std::vector<PairRecord> &pairs,
                                           const RecordIndex &records,
                                           const FluencyTable &fluency,
                                           FluencyTarget target,
                                           const FluencyThresholds &thresholds = {});

}  // namespace microstyle
