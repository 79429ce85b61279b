#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "microstyle/record.h"

namespace microstyle {

// Five intensity levels partitioning a style score in [0, 1]:
//   very_low [0, 0.2)  low [0.2, 0.4)  mid [0.4, 0.6)  high [0.6, 0.95)
//   very_high [0.95, 1]
enum class Bucket : std::uint8_t { kVeryLow = 0, kLow, kMid, kHigh, kVeryHigh };

inline constexpr Bucket kAllBuckets[] = {Bucket::kVeryLow, Bucket::kLow, Bucket::kMid,
                                         Bucket::kHigh, Bucket::kVeryHigh};

// Throws ScoreOutOfRange outside [0, 1] (and for NaN).
Bucket BucketOf(double score);

// Prompt token: "very low", "low", "mid", "high", "very high".
std::string_view BucketToken(Bucket bucket);
// Inverse of BucketToken. Also accepts the underscore spelling ("very_low").
// Throws MalformedLine on anything else.
Bucket ParseBucketToken(std::string_view token);

struct StyleDef {
  std::string name;
  // State codes ordered from the high end of the score range down to the low
  // end; a binary style is {high_code, low_code}.
  std::vector<char> codes;
};

class StyleSpaceConfig {
 public:
  StyleSpaceConfig() = default;
  // Validates: at least one style, every style has >= 2 distinct codes,
  // style names unique and non-empty.
  explicit StyleSpaceConfig(std::vector<StyleDef> styles);

  // Styles by name using the canonical codes: formality f/i, bias b/u,
  // arousal e/n, sentiment p/n.
  static StyleSpaceConfig FromNames(const std::vector<std::string> &names);

  // {"micro_styles": [{"name": "formality", "codes": ["f", "i"]}, ...]}.
  // "codes" may be omitted for the canonical styles.
  static StyleSpaceConfig Load(const std::filesystem::path &path);

  const std::vector<StyleDef> &styles() const { return styles_; }
  std::size_t size() const { return styles_.size(); }
  std::vector<std::string> names() const;
  bool has_style(std::string_view name) const;

  // N_c: product of per-style state counts.
  std::size_t combination_count() const;

 private:
  std::vector<StyleDef> styles_;
};

// Per-style buckets, one entry per configured style, in configured order.
struct BucketVector {
  std::vector<std::pair<std::string, Bucket>> entries;

  bool operator==(const BucketVector &) const = default;
};

using CombinationKey = std::string;

// Throws UnscoredRecord when a configured style has no score.
BucketVector MakeBucketVector(const SentenceRecord &record, const StyleSpaceConfig &config);

// Binary state is the high code when score >= 0.5. Styles with k > 2 states
// split [0, 1] into k equal bins, highest bin first.
CombinationKey CombinationOf(const SentenceRecord &record, const StyleSpaceConfig &config);

// Combination implied by intended buckets: buckets at or above mid map to the
// high state of a binary style.
CombinationKey CombinationOfBuckets(const BucketVector &buckets,
                                    const StyleSpaceConfig &config);

// All N_c keys in odometer order over each style's code list (configured
// style order, high code first). This order is the canonical key order used
// throughout the toolkit.
std::vector<CombinationKey> EnumerateCombinations(const StyleSpaceConfig &config);

// Position of `key` in EnumerateCombinations order; throws StyleMismatch if
// the key is not a member.
std::size_t CombinationIndex(const CombinationKey &key, const StyleSpaceConfig &config);

}  // namespace microstyle
