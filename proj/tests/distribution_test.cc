#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "microstyle/distribution.h"
#include "microstyle/error.h"
#include "microstyle/rng.h"
#include "oracles.h"
#include "test_util.h"

using namespace microstyle;
using namespace microstyle::testing;

namespace {

CombinationCounts Counts(const std::vector<std::string> &keys, const std::vector<std::uint64_t> &n) {
  CombinationCounts out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.emplace_back(keys[i], n[i]);
  return out;
}

std::vector<std::uint64_t> Values(const CombinationCounts &counts) {
  std::vector<std::uint64_t> out;
  for (const auto &kv : counts) out.push_back(kv.second);
  return out;
}

const std::vector<std::string> kFa{"fe", "fn", "ie", "in"};

// Reference skewed counts scaled so the smallest combination holds 3395.
const std::vector<std::uint64_t> kReferenceSource{35611, 11448, 5228, 3395};

}  // namespace

TEST_CASE("rng streams match the reference bit patterns") {
  CHECK(SplitMix64(0).Next() == 0xe220a8397b1dcdafULL);
  Xoshiro256 rng(7);
  CHECK(rng.Next() == 0xb358faf74ef9765aULL);
  CHECK(rng.Next() == 0x475c3d964f482cd2ULL);
  CHECK(rng.Next() == 0xd6f1d349952c7996ULL);
  CHECK(Fnv1a64("fe") == 0x08985f07b541dd74ULL);
  CHECK(StreamSeed(7, "fe") == 0x5826967517f5ab57ULL);

  Xoshiro256 stream(StreamSeed(7, "fe"));
  std::vector<int> items{0, 1, 2, 3, 4};
  stream.Shuffle(items);
  CHECK(items == std::vector<int>{4, 0, 1, 3, 2});
}

TEST_CASE("UniformBelow stays in range") {
  Xoshiro256 rng(1);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 200; ++i) CHECK(rng.UniformBelow(bound) < bound);
  }
  for (int i = 0; i < 1000; ++i) {
    double u = rng.UniformUnit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("tally") {
  auto config = StyleSpaceConfig::FromNames({"formality", "arousal"});
  SUBCASE("hand count") {
    std::vector<SentenceRecord> records;
    for (const char *key : {"fe", "fe", "in", "fn"}) {
      auto part = RecordsForKey(config, key, 1);
      part[0].id += std::to_string(records.size());
      records.push_back(part[0]);
    }
    CHECK(Tally(records, config) == Counts(kFa, {2, 1, 0, 1}));
  }
  SUBCASE("empty") { CHECK(Tally({}, config) == Counts(kFa, {0, 0, 0, 0})); }
  SUBCASE("reference skewed counts") {
    auto records = RecordsForCounts(config, Counts(kFa, {8685, 2792, 1275, 828}));
    CHECK(Tally(records, config) == Counts(kFa, {8685, 2792, 1275, 828}));
  }
}

TEST_CASE("FloorCount") {
  CHECK(FloorCount(0.05, 1592) == 80);
  CHECK(FloorCount(0.05, 2000) == 100);
  CHECK(FloorCount(0.05, 2001) == 101);
  CHECK(FloorCount(0.0, 500) == 0);
  CHECK_THROWS_AS(FloorCount(1.5, 10), Error);
}

TEST_CASE("plan_balanced") {
  SUBCASE("healthy minimum gives 3395 everywhere") {
    auto plan = PlanBalanced(Counts(kFa, kReferenceSource), 0.05, 7);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{3395, 3395, 3395, 3395});
    CHECK(plan.total_target() == 13580);
    CHECK(plan.upsampled_keys.empty());
    CHECK(plan.mode == DatasetMode::kBalanced);
  }
  SUBCASE("floor lifts rare combinations") {
    std::vector<std::string> keys{"a", "b", "c", "d", "e", "f", "g", "h"};
    auto plan = PlanBalanced(Counts(keys, {500, 400, 300, 200, 100, 50, 40, 2}), 0.05, 1);
    for (const auto &[key, target] : plan.target_counts) CHECK(target == 80);
    CHECK(plan.upsampled_keys == std::vector<std::string>{"f", "g", "h"});
  }
  SUBCASE("uniform counts are a fixed point") {
    auto plan = PlanBalanced(Counts(kFa, {10, 10, 10, 10}), 0.05, 1);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{10, 10, 10, 10});
    CHECK(plan.upsampled_keys.empty());
  }
  SUBCASE("all empty") {
    try {
      PlanBalanced(Counts(kFa, {0, 0, 0, 0}), 0.05, 1);
      FAIL("expected AllCombinationsEmpty");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kAllCombinationsEmpty);
    }
  }
}

TEST_CASE("plan_skewed") {
  SUBCASE("reference proportions") {
    auto plan = PlanSkewed(Counts(kFa, kReferenceSource), 13580, 7);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{8685, 2792, 1275, 828});
    CHECK(plan.mode == DatasetMode::kSkewed);
  }
  SUBCASE("hand largest remainder") {
    auto plan = PlanSkewed(Counts(kFa, {100, 40, 30, 10}), 40, 0);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{22, 9, 7, 2});
  }
  SUBCASE("single nonzero combination") {
    auto plan = PlanSkewed(Counts(kFa, {0, 9, 0, 0}), 5, 0);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{0, 5, 0, 0});
  }
  SUBCASE("ties go to the earlier key") {
    auto plan = PlanSkewed(Counts(kFa, {1, 1, 1, 1}), 2, 0);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{1, 1, 0, 0});
  }
  SUBCASE("infeasible total") {
    try {
      PlanSkewed(Counts(kFa, {3, 3, 3, 3}), 13, 0);
      FAIL("expected InfeasibleTotal");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kInfeasibleTotal);
    }
  }
  SUBCASE("full total reproduces the source") {
    auto plan = PlanSkewed(Counts(kFa, {7, 0, 3, 1}), 11, 0);
    CHECK(Values(plan.target_counts) == std::vector<std::uint64_t>{7, 0, 3, 1});
  }
}

TEST_CASE("largest remainder agrees with the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<std::uint64_t> weights(n);
    for (auto &w : weights) w = rng() % 5 == 0 ? 0 : rng() % 2000;
    if (std::all_of(weights.begin(), weights.end(), [](auto w) { return w == 0; })) weights[0] = 1;
    const std::uint64_t total = rng() % 10001;
    auto seats = LargestRemainder(weights, total);
    CHECK(seats == BruteForceApportion(weights, total));
    std::uint64_t sum = 0;
    for (auto s : seats) sum += s;
    CHECK(sum == total);
  }
}

TEST_CASE("skewed and balanced totals agree when the balanced total fits the corpus") {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::vector<std::size_t>{4, 8, 16}[rng() % 3];
    std::vector<std::string> keys;
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < n; ++i) {
      keys.push_back("k" + std::to_string(i));
      counts.push_back(1 + rng() % 3000);
    }
    auto source = Counts(keys, counts);
    auto balanced = PlanBalanced(source, 0.05, 0);
    if (balanced.total_target() > SumCounts(source)) continue;
    auto skewed = PlanSkewed(source, balanced.total_target(), 0);
    CHECK(skewed.total_target() == balanced.total_target());
    for (std::size_t i = 0; i < n; ++i) CHECK(skewed.target_counts[i].second <= counts[i]);
    ++checked;
  }
  CHECK(checked > 400);
}

TEST_CASE("materialize") {
  auto config = StyleSpaceConfig::FromNames({"formality", "arousal"});

  SUBCASE("deterministic subset without replacement") {
    auto records = RecordsForKey(config, "fe", 3);
    DistributionPlan plan;
    plan.mode = DatasetMode::kSkewed;
    plan.seed = 7;
    plan.target_counts = Counts(kFa, {2, 0, 0, 0});
    auto first = Materialize(plan, records, config);
    REQUIRE(first.size() == 2);
    CHECK(first[0].id != first[1].id);
    CHECK(Materialize(plan, records, config) == first);
    // Input order does not matter: records are sorted by id per combination.
    std::reverse(records.begin(), records.end());
    CHECK(Materialize(plan, records, config) == first);
  }
  SUBCASE("upsampling with replacement only draws existing ids") {
    auto records = RecordsForKey(config, "in", 2);
    DistributionPlan plan;
    plan.mode = DatasetMode::kBalanced;
    plan.seed = 3;
    plan.target_counts = Counts(kFa, {0, 0, 0, 80});
    auto out = Materialize(plan, records, config);
    REQUIRE(out.size() == 80);
    std::set<std::string> ids;
    for (const auto &r : out) ids.insert(r.id);
    CHECK(ids == std::set<std::string>{"in_0", "in_1"});
  }
  SUBCASE("all-zero plan") {
    DistributionPlan plan;
    plan.target_counts = Counts(kFa, {0, 0, 0, 0});
    CHECK(Materialize(plan, RecordsForKey(config, "fe", 4), config).empty());
  }
  SUBCASE("skewed plans never upsample") {
    DistributionPlan plan;
    plan.mode = DatasetMode::kSkewed;
    plan.target_counts = Counts(kFa, {5, 0, 0, 0});
    try {
      Materialize(plan, RecordsForKey(config, "fe", 4), config);
      FAIL("expected TargetExceedsAvailable");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kTargetExceedsAvailable);
    }
  }
  SUBCASE("empty combination cannot be upsampled") {
    DistributionPlan plan;
    plan.mode = DatasetMode::kBalanced;
    plan.target_counts = Counts(kFa, {1, 1, 1, 1});
    CHECK_THROWS_AS(Materialize(plan, RecordsForKey(config, "fe", 4), config), Error);
  }
  SUBCASE("output is grouped in key order") {
    auto records = RecordsForCounts(config, Counts(kFa, {3, 3, 3, 3}));
    std::shuffle(records.begin(), records.end(), std::mt19937_64(1));
    auto plan = PlanBalanced(Tally(records, config), 0.05, 11);
    auto out = Materialize(plan, records, config);
    REQUIRE(out.size() == 12);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].id.substr(0, 2) == kFa[i / 3]);
  }
}

TEST_CASE("balanced materialization is uniform, meets the floor, and is idempotent") {
  auto config = StyleSpaceConfig::FromNames({"formality", "bias", "arousal"});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    CombinationCounts source;
    for (const auto &key : EnumerateCombinations(config)) source.emplace_back(key, 1 + rng() % 400);
    auto records = RecordsForCounts(config, source);
    auto plan = PlanBalanced(Tally(records, config), 0.05, trial);
    auto out = Materialize(plan, records, config);
    auto tally = Tally(out, config);
    CHECK(StdDevReport(tally) == 0.0);
    CHECK(tally.front().second >= FloorCount(0.05, records.size()));
    auto again = PlanBalanced(tally, 0.05, trial);
    CHECK(again.target_counts == plan.target_counts);
  }
}

TEST_CASE("rare combinations gain share under balancing") {
  auto config = StyleSpaceConfig::FromNames({"formality", "bias", "arousal"});
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    CombinationCounts source;
    for (const auto &key : EnumerateCombinations(config)) source.emplace_back(key, 300 + rng() % 700);
    const std::size_t rare = rng() % source.size();
    source[rare].second = 1 + rng() % 20;
    auto records = RecordsForCounts(config, source);
    const double natural = static_cast<double>(source[rare].second) / static_cast<double>(records.size());
    REQUIRE(natural < 0.02);

    auto balanced = PlanBalanced(source, 0.05, trial);
    auto skewed = PlanSkewed(source, balanced.total_target(), trial);
    auto share = [&](const std::vector<SentenceRecord> &out) {
      return static_cast<double>(Tally(out, config)[rare].second) / static_cast<double>(out.size());
    };
    CHECK(share(Materialize(balanced, records, config)) > share(Materialize(skewed, records, config)));
  }
}

TEST_CASE("stddev report") {
  CHECK(StdDevReport(Counts(kFa, {3395, 3395, 3395, 3395})) == 0.0);
  // Population std-dev of the reference skewed counts, computed by hand:
  // mean 3395, squared deviations sum 39,431,598, / 4 = 9,857,899.5.
  CHECK(StdDevReport(Counts(kFa, {8685, 2792, 1275, 828})) == doctest::Approx(3139.729208).epsilon(1e-9));
  CHECK(StdDevReport(Counts({"x"}, {42})) == 0.0);
  CHECK(PopulationStdDev({2, 4, 4, 4, 5, 5, 7, 9}) == 2.0);
}

TEST_CASE("plan files round-trip") {
  TempDir dir;
  auto plan = PlanBalanced(Counts(kFa, {500, 40, 30, 2}), 0.05, 123456789012345ULL);
  WritePlan(dir / "plan.json", plan);
  auto back = ReadPlan(dir / "plan.json");
  CHECK(back.mode == plan.mode);
  CHECK(back.seed == plan.seed);
  CHECK(back.floor_share == plan.floor_share);
  CHECK(back.source_counts == plan.source_counts);
  CHECK(back.target_counts == plan.target_counts);
  CHECK(back.upsampled_keys == plan.upsampled_keys);
  CHECK_THROWS_AS(ReadPlan(WriteFile(dir / "bad.json", "{\"mode\":\"raw\",\"combinations\":[]}")), Error);
}

TEST_CASE("duplication warnings") {
  auto plan = PlanBalanced(Counts(kFa, {5000, 4000, 3000, 2}), 0.05, 0);
  auto warnings = DuplicationWarnings(plan);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].rfind("in:", 0) == 0);
}
