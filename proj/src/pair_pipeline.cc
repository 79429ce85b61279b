#include "microstyle/pair_pipeline.h"

#include <cmath>

#include "microstyle/error.h"
#include "microstyle/jsonl.h"

namespace microstyle {

namespace {

constexpr double kMinNorm = 1e-12;

const std::string &SelectedOf(const PairRecord &pair) {
  if (!pair.selected_id) throw Error(ErrorKind::kUnselectedPair, pair.anchor_id);
  return *pair.selected_id;
}

}  // namespace

FluencyTable ReadFluency(const std::filesystem::path &path) {
  FluencyTable table;
  ForEachJsonLine(path, [&](std::size_t line, const Json &obj) {
    FluencyRecord row;
    row.id = RequireString(obj, "id", line);
    row.perplexity = RequireNumber(obj, "perplexity", line);
    row.adversarial = RequireNumber(obj, "adversarial", line);
    if (!(row.perplexity > 0.0)) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line) + ": perplexity must be positive");
    }
    if (!(row.adversarial >= 0.0 && row.adversarial <= 1.0)) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line) + ": adversarial must lie in [0, 1]");
    }
    if (!table.emplace(row.id, row).second) throw Error(ErrorKind::kDuplicateId, row.id);
  });
  return table;
}

std::vector<double> StyleVector(const SentenceRecord &record, const StyleSpaceConfig &config) {
  std::vector<double> out;
  out.reserve(config.size());
  for (const auto &style : config.styles()) {
    auto it = record.scores.find(style.name);
    if (it == record.scores.end()) {
      throw Error(ErrorKind::kUnscoredRecord, record.id + " has no '" + style.name + "' score");
    }
    out.push_back(it->second);
  }
  return out;
}

double StyleDistance(const std::vector<double> &a, const std::vector<double> &b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na < kMinNorm || nb < kMinNorm) return 1.0;
  return 1.0 - dot / (na * nb);
}

PairRecord SelectBestParaphrase(const PairRecord &pair, const RecordIndex &records,
                                const StyleSpaceConfig &config) {
  if (pair.candidate_ids.empty()) throw Error(ErrorKind::kNoCandidates, pair.anchor_id);
  const auto anchor = StyleVector(LookUp(records, pair.anchor_id), config);

  std::size_t best = 0;
  double best_distance = -1.0;
  for (std::size_t i = 0; i < pair.candidate_ids.size(); ++i) {
    double d = StyleDistance(anchor, StyleVector(LookUp(records, pair.candidate_ids[i]), config));
    if (d > best_distance) {
      best = i;
      best_distance = d;
    }
  }
  PairRecord out = pair;
  out.selected_id = pair.candidate_ids[best];
  return out;
}

std::vector<PairRecord> DiversityFilter(const std::vector<PairRecord> &pairs,
                                        const RecordIndex &records,
                                        const StyleSpaceConfig &config) {
  std::vector<PairRecord> kept;
  for (const auto &pair : pairs) {
    const auto &paraphrase = LookUp(records, SelectedOf(pair));
    if (MakeBucketVector(LookUp(records, pair.anchor_id), config) !=
        MakeBucketVector(paraphrase, config)) {
      kept.push_back(pair);
    }
  }
  return kept;
}

bool PassesFluency(const FluencyRecord &row, const FluencyThresholds &thresholds) {
  return row.perplexity < thresholds.max_perplexity && row.adversarial > thresholds.min_adversarial;
}

std::vector<SentenceRecord> FluencyFilter(const std::vector<SentenceRecord> &records,
                                          const FluencyTable &fluency,
                                          const FluencyThresholds &thresholds) {
  std::vector<SentenceRecord> kept;
  for (const auto &record : records) {
    auto it = fluency.find(record.id);
    if (it == fluency.end()) throw Error(ErrorKind::kMissingFluency, record.id);
    if (PassesFluency(it->second, thresholds)) kept.push_back(record);
  }
  return kept;
}

std::string_view FluencyTargetName(FluencyTarget target) {
  switch (target) {
    case FluencyTarget::kAnchors: return "anchors";
    case FluencyTarget::kParaphrases: return "paraphrases";
    case FluencyTarget::kBoth: return "both";
  }
  return "both";
}

FluencyTarget ParseFluencyTarget(std::string_view name) {
  if (name == "anchors") return FluencyTarget::kAnchors;
  if (name == "paraphrases") return FluencyTarget::kParaphrases;
  if (name == "both") return FluencyTarget::kBoth;
  throw Error(ErrorKind::kInvalidConfig, "unknown fluency target '" + std::string(name) + "'");
}

std::vector<PairRecord> FluencyFilterPairs(const std::vector<PairRecord> &pairs,
                                           const RecordIndex &records,
                                           const FluencyTable &fluency, FluencyTarget target,
                                           const FluencyThresholds &thresholds) {
  auto passes = [&](const std::string &id) {
    LookUp(records, id);
    auto it = fluency.find(id);
    if (it == fluency.end()) throw Error(ErrorKind::kMissingFluency, id);
    return PassesFluency(it->second, thresholds);
  };
  std::vector<PairRecord> kept;
  for (const auto &pair : pairs) {
    bool ok = true;
    if (target != FluencyTarget::kParaphrases) ok = ok && passes(pair.anchor_id);
    if (target != FluencyTarget::kAnchors) ok = ok && passes(SelectedOf(pair));
    if (ok) kept.push_back(pair);
  }
  return kept;
}

}  // namespace microstyle
