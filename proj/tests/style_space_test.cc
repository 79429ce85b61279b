#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "microstyle/error.h"
#include "microstyle/style_space.h"
#include "test_util.h"

using namespace microstyle;
using namespace microstyle::testing;

TEST_CASE("bucket boundaries") {
  CHECK(BucketOf(0.5) == Bucket::kMid);
  CHECK(BucketOf(0.2) == Bucket::kLow);
  CHECK(BucketOf(0.95) == Bucket::kVeryHigh);
  CHECK(BucketOf(1.0) == Bucket::kVeryHigh);
  CHECK(BucketOf(0.97) == Bucket::kVeryHigh);
  CHECK(BucketOf(0.0) == Bucket::kVeryLow);
  CHECK(BucketOf(0.19999999) == Bucket::kVeryLow);
  CHECK(BucketOf(0.4) == Bucket::kMid);
  CHECK(BucketOf(0.6) == Bucket::kHigh);
  CHECK(BucketOf(0.9499) == Bucket::kHigh);
  CHECK_THROWS_AS(BucketOf(1.0000001), Error);
  CHECK_THROWS_AS(BucketOf(-0.01), Error);
  CHECK_THROWS_AS(BucketOf(std::nan("")), Error);
}

TEST_CASE("bucket tokens") {
  CHECK(BucketToken(Bucket::kVeryHigh) == "very high");
  CHECK(BucketToken(Bucket::kVeryLow) == "very low");
  for (Bucket b : kAllBuckets) CHECK(ParseBucketToken(BucketToken(b)) == b);
  CHECK(ParseBucketToken("very_high") == Bucket::kVeryHigh);
  CHECK_THROWS_AS(ParseBucketToken("VERY HIGH"), Error);
}

TEST_CASE("buckets are monotone in the score") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    double a = unit(rng), b = unit(rng);
    if (a > b) std::swap(a, b);
    CHECK(BucketOf(a) <= BucketOf(b));
  }
}

TEST_CASE("bucket vectors") {
  auto config = StyleSpaceConfig::FromNames({"formality", "arousal"});
  auto bv = MakeBucketVector(Scored("x", {{"formality", 0.1}, {"arousal", 0.5}}), config);
  REQUIRE(bv.entries.size() == 2);
  CHECK(bv.entries[0] == std::pair<std::string, Bucket>{"formality", Bucket::kVeryLow});
  CHECK(bv.entries[1] == std::pair<std::string, Bucket>{"arousal", Bucket::kMid});

  auto zeros = MakeBucketVector(Scored("z", {{"formality", 0.0}, {"arousal", 0.0}}), config);
  for (const auto &[style, b] : zeros.entries) CHECK(b == Bucket::kVeryLow);

  try {
    MakeBucketVector(Scored("m", {{"formality", 0.3}}), config);
    FAIL("expected UnscoredRecord");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kUnscoredRecord);
  }
}

TEST_CASE("combination keys use the high code at >= 0.5") {
  auto config = StyleSpaceConfig::FromNames({"formality", "bias", "arousal"});
  CHECK(CombinationOf(Scored("a", {{"formality", 0.8}, {"bias", 0.3}, {"arousal", 0.7}}), config) == "fue");
  CHECK(CombinationOf(Scored("b", {{"formality", 0.1}, {"bias", 0.3}, {"arousal", 0.2}}), config) == "iun");
  CHECK(CombinationOf(Scored("c", {{"formality", 0.5}, {"bias", 0.5}, {"arousal", 0.5}}), config) == "fbe");
  CHECK_THROWS_AS(CombinationOf(Scored("d", {{"formality", 0.5}}), config), Error);
}

TEST_CASE("combination of intended buckets") {
  auto config = StyleSpaceConfig::FromNames({"formality", "arousal"});
  BucketVector bv{{{"formality", Bucket::kMid}, {"arousal", Bucket::kLow}}};
  CHECK(CombinationOfBuckets(bv, config) == "fn");
  bv.entries[0].second = Bucket::kVeryLow;
  bv.entries[1].second = Bucket::kVeryHigh;
  CHECK(CombinationOfBuckets(bv, config) == "ie");
}

TEST_CASE("enumerate combinations") {
  auto fa = StyleSpaceConfig::FromNames({"formality", "arousal"});
  CHECK(EnumerateCombinations(fa) == std::vector<std::string>{"fe", "fn", "ie", "in"});
  CHECK(EnumerateCombinations(StyleSpaceConfig::FromNames({"formality", "bias", "arousal"})).size() == 8);
  StyleSpaceConfig ternary({{"tone", {'h', 'm', 'l'}}, {"formality", {'f', 'i'}}});
  auto keys = EnumerateCombinations(ternary);
  CHECK(keys.size() == 6);
  CHECK(keys.front() == "hf");
  CHECK(keys.back() == "li");
  for (std::size_t i = 0; i < keys.size(); ++i) CHECK(CombinationIndex(keys[i], ternary) == i);
  CHECK_THROWS_AS(CombinationIndex("xx", ternary), Error);
}

TEST_CASE("enumeration size is the product of cardinalities for random configs") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<StyleDef> styles;
    std::size_t product = 1;
    char next = 'A';
    for (std::size_t i = 0; i < n; ++i) {
      StyleDef def{"s" + std::to_string(i), {}};
      const std::size_t k = 2 + rng() % 3;
      for (std::size_t c = 0; c < k; ++c) def.codes.push_back(next++);
      if (next > 'z') next = 'A';
      product *= k;
      styles.push_back(def);
    }
    StyleSpaceConfig config(styles);
    auto keys = EnumerateCombinations(config);
    CHECK(keys.size() == product);
    CHECK(config.combination_count() == product);
    CHECK(std::set<std::string>(keys.begin(), keys.end()).size() == product);

    std::set<std::string> members(keys.begin(), keys.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int r = 0; r < 20; ++r) {
      SentenceRecord rec{"r", "t", {}};
      for (const auto &s : config.styles()) rec.scores[s.name] = unit(rng);
      CHECK(members.count(CombinationOf(rec, config)) == 1);
    }
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(StyleSpaceConfig(std::vector<StyleDef>{}), Error);
  CHECK_THROWS_AS(StyleSpaceConfig({{"x", {'a'}}}), Error);
  CHECK_THROWS_AS(StyleSpaceConfig({{"x", {'a', 'a'}}}), Error);
  CHECK_THROWS_AS(StyleSpaceConfig({{"x", {'a', 'b'}}, {"x", {'c', 'd'}}}), Error);
  CHECK_THROWS_AS(StyleSpaceConfig::FromNames({"sarcasm"}), Error);
}

TEST_CASE("config file loading") {
  TempDir dir;
  auto path = WriteFile(dir / "c.json",
                        R"({"micro_styles": ["formality", {"name": "arousal"}, {"name": "tone", "codes": ["h", "l"]}]})");
  auto config = StyleSpaceConfig::Load(path);
  CHECK(config.names() == std::vector<std::string>{"formality", "arousal", "tone"});
  CHECK(config.styles()[1].codes == std::vector<char>{'e', 'n'});
  CHECK(config.styles()[2].codes == std::vector<char>{'h', 'l'});
  CHECK_THROWS_AS(StyleSpaceConfig::Load(WriteFile(dir / "bad.json", "{}")), Error);
}
