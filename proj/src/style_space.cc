#include "microstyle/style_space.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "microstyle/error.h"
#include "microstyle/jsonl.h"

namespace microstyle {

namespace {

constexpr double kBucketUpperBounds[] = {0.2, 0.4, 0.6, 0.95};

void CheckUnit(double score, const std::string &what) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorKind::kScoreOutOfRange, what + " = " + std::to_string(score));
  }
}

std::vector<char> CanonicalCodes(std::string_view name) {
  if (name == "formality") return {'f', 'i'};
  if (name == "bias") return {'b', 'u'};
  if (name == "arousal") return {'e', 'n'};
  if (name == "sentiment") return {'p', 'n'};
  throw Error(ErrorKind::kInvalidConfig,
              "no canonical state codes for style '" + std::string(name) + "'");
}

// Index into StyleDef::codes for a score.
std::size_t StateIndex(double score, std::size_t states) {
  auto bin = static_cast<std::size_t>(std::floor(score * static_cast<double>(states)));
  bin = std::min(bin, states - 1);
  return states - 1 - bin;
}

}  // namespace

Bucket BucketOf(double score) {
  CheckUnit(score, "score");
  for (std::size_t i = 0; i < std::size(kBucketUpperBounds); ++i) {
    if (score < kBucketUpperBounds[i]) return static_cast<Bucket>(i);
  }
  return Bucket::kVeryHigh;
}

std::string_view BucketToken(Bucket bucket) {
  switch (bucket) {
    case Bucket::kVeryLow: return "very low";
    case Bucket::kLow: return "low";
    case Bucket::kMid: return "mid";
    case Bucket::kHigh: return "high";
    case Bucket::kVeryHigh: return "very high";
  }
  return "mid";
}

Bucket ParseBucketToken(std::string_view token) {
  for (Bucket b : kAllBuckets) {
    std::string spelled(BucketToken(b));
    if (token == spelled) return b;
    std::replace(spelled.begin(), spelled.end(), ' ', '_');
    if (token == spelled) return b;
  }
  throw Error(ErrorKind::kMalformedLine, "unknown bucket token '" + std::string(token) + "'");
}

StyleSpaceConfig::StyleSpaceConfig(std::vector<StyleDef> styles) : styles_(std::move(styles)) {
  if (styles_.empty()) throw Error(ErrorKind::kInvalidConfig, "no micro-styles configured");
  std::set<std::string> seen;
  for (const auto &style : styles_) {
    if (style.name.empty()) throw Error(ErrorKind::kInvalidConfig, "empty style name");
    if (!seen.insert(style.name).second) {
      throw Error(ErrorKind::kInvalidConfig, "duplicate style '" + style.name + "'");
    }
    if (style.codes.size() < 2) {
      throw Error(ErrorKind::kInvalidConfig, "style '" + style.name + "' needs >= 2 states");
    }
    std::set<char> codes(style.codes.begin(), style.codes.end());
    if (codes.size() != style.codes.size()) {
      throw Error(ErrorKind::kInvalidConfig, "style '" + style.name + "' repeats a state code");
    }
  }
}

StyleSpaceConfig StyleSpaceConfig::FromNames(const std::vector<std::string> &names) {
  std::vector<StyleDef> styles;
  for (const auto &name : names) styles.push_back({name, CanonicalCodes(name)});
  return StyleSpaceConfig(std::move(styles));
}

StyleSpaceConfig StyleSpaceConfig::Load(const std::filesystem::path &path) {
  Json doc = ReadJsonFile(path);
  auto list = doc.find("micro_styles");
  if (list == doc.end() || !list->is_array()) {
    throw Error(ErrorKind::kInvalidConfig, path.string() + ": missing 'micro_styles' array");
  }
  std::vector<StyleDef> styles;
  for (const auto &entry : *list) {
    StyleDef def;
    if (entry.is_string()) {
      def.name = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("name") && entry["name"].is_string()) {
      def.name = entry["name"].get<std::string>();
      if (entry.contains("codes")) {
        for (const auto &code : entry["codes"]) {
          if (!code.is_string() || code.get<std::string>().size() != 1) {
            throw Error(ErrorKind::kInvalidConfig,
                        "style '" + def.name + "': codes must be single characters");
          }
          def.codes.push_back(code.get<std::string>()[0]);
        }
      }
    } else {
      throw Error(ErrorKind::kInvalidConfig, path.string() + ": bad micro_styles entry");
    }
    if (def.codes.empty()) def.codes = CanonicalCodes(def.name);
    styles.push_back(std::move(def));
  }
  return StyleSpaceConfig(std::move(styles));
}

std::vector<std::string> StyleSpaceConfig::names() const {
  std::vector<std::string> out;
  out.reserve(styles_.size());
  for (const auto &s : styles_) out.push_back(s.name);
  return out;
}

bool StyleSpaceConfig::has_style(std::string_view name) const {
  return std::any_of(styles_.begin(), styles_.end(),
                     [&](const StyleDef &s) { return s.name == name; });
}

std::size_t StyleSpaceConfig::combination_count() const {
  std::size_t n = 1;
  for (const auto &s : styles_) n *= s.codes.size();
  return n;
}

namespace {

double ScoreFor(const SentenceRecord &record, const std::string &style) {
  auto it = record.scores.find(style);
  if (it == record.scores.end()) {
    throw Error(ErrorKind::kUnscoredRecord, record.id + " has no '" + style + "' score");
  }
  return it->second;
}

}  // namespace

BucketVector MakeBucketVector(const SentenceRecord &record, const StyleSpaceConfig &config) {
  BucketVector out;
  for (const auto &style : config.styles()) {
    double score = ScoreFor(record, style.name);
    CheckUnit(score, record.id + "." + style.name);
    out.entries.emplace_back(style.name, BucketOf(score));
  }
  return out;
}

CombinationKey CombinationOf(const SentenceRecord &record, const StyleSpaceConfig &config) {
  CombinationKey key;
  for (const auto &style : config.styles()) {
    double score = ScoreFor(record, style.name);
    CheckUnit(score, record.id + "." + style.name);
    key.push_back(style.codes[StateIndex(score, style.codes.size())]);
  }
  return key;
}

CombinationKey CombinationOfBuckets(const BucketVector &buckets,
                                    const StyleSpaceConfig &config) {
  if (buckets.entries.size() != config.size()) {
    throw Error(ErrorKind::kStyleMismatch, "bucket vector does not cover the configured styles");
  }
  CombinationKey key;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto &style = config.styles()[i];
    if (buckets.entries[i].first != style.name) {
      throw Error(ErrorKind::kStyleMismatch,
                  "expected style '" + style.name + "', got '" + buckets.entries[i].first + "'");
    }
    // Representative score of each bucket (mid -> 0.5) mapped through the
    // same state rule as CombinationOf.
    static constexpr double kRepresentative[] = {0.1, 0.3, 0.5, 0.775, 0.975};
    double score = kRepresentative[static_cast<std::size_t>(buckets.entries[i].second)];
    key.push_back(style.codes[StateIndex(score, style.codes.size())]);
  }
  return key;
}

std::vector<CombinationKey> EnumerateCombinations(const StyleSpaceConfig &config) {
  std::vector<CombinationKey> keys{""};
  for (const auto &style : config.styles()) {
    std::vector<CombinationKey> next;
    next.reserve(keys.size() * style.codes.size());
    for (const auto &prefix : keys) {
      for (char code : style.codes) next.push_back(prefix + code);
    }
    keys = std::move(next);
  }
  return keys;
}

std::size_t CombinationIndex(const CombinationKey &key, const StyleSpaceConfig &config) {
  if (key.size() != config.size()) {
    throw Error(ErrorKind::kStyleMismatch, "combination '" + key + "' has wrong length");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto &codes = config.styles()[i].codes;
    auto it = std::find(codes.begin(), codes.end(), key[i]);
    if (it == codes.end()) {
      throw Error(ErrorKind::kStyleMismatch, "combination '" + key + "' is not in the style space");
    }
    index = index * codes.size() + static_cast<std::size_t>(it - codes.begin());
  }
  return index;
}

}  // namespace microstyle
