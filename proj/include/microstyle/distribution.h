#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "microstyle/corpus.h"
#include "microstyle/record.h"
#include "microstyle/style_space.h"

namespace microstyle {

// Per-combination counts in canonical key order. Position in this vector is
// the tie-break order for apportionment.
using CombinationCounts = std::vector<std::pair<CombinationKey, std::uint64_t>>;

inline constexpr double kDefaultFloorShare = 0.05;
// Upsampling beyond this many draws per available record triggers a warning.
inline constexpr double kDuplicationWarnFactor = 20.0;

struct DistributionPlan {
  DatasetMode mode = DatasetMode::kBalanced;
  CombinationCounts source_counts;
  CombinationCounts target_counts;
  std::uint64_t seed = 0;
  double floor_share = kDefaultFloorShare;
  std::vector<CombinationKey> upsampled_keys;

  std::uint64_t total_target() const;
};

// Counts records per combination. Every enumerated key is present.
CombinationCounts Tally(const std::vector<SentenceRecord> &records,
                        const StyleSpaceConfig &config);

std::uint64_t SumCounts(const CombinationCounts &counts);

// ceil(share * total), treating products within 1e-9 (relative) of an
// integer as that integer so 0.05 * 2000 is 100 rather than 101.
std::uint64_t FloorCount(double share, std::uint64_t total);

// Every combination gets c = max(min count, FloorCount(floor_share, total)).
// Keys whose source count is below c are listed in upsampled_keys.
// Throws AllCombinationsEmpty when every count is zero.
DistributionPlan PlanBalanced(const CombinationCounts &source_counts, double floor_share,
                              std::uint64_t seed);

// Largest-remainder (Hamilton) apportionment of `total` proportional to the
// source counts, ties to the earlier key. Targets above a key's source count
// are capped and the surplus re-apportioned among the uncapped keys until
// nothing exceeds its source. Throws InfeasibleTotal when total exceeds the
// source total and AllCombinationsEmpty when there is nothing to apportion.
DistributionPlan PlanSkewed(const CombinationCounts &source_counts, std::uint64_t total,
                            std::uint64_t seed, double floor_share = kDefaultFloorShare);

// Hamilton apportionment without capping. Exposed for tests and reuse.
std::vector<std::uint64_t> LargestRemainder(const std::vector<std::uint64_t> &weights,
                                            std::uint64_t total);

// Draws the planned subset. Within each combination records are sorted by id,
// then a stream seeded with StreamSeed(plan.seed, key) either shuffles and
// takes the first `target` (target <= available) or, for balanced plans,
// draws `target` indices with replacement. Output is concatenated in plan key
// order. A skewed plan that asks for more than is available throws
// TargetExceedsAvailable, as does any positive target for an empty key.
std::vector<SentenceRecord> Materialize(const DistributionPlan &plan,
                                        const std::vector<SentenceRecord> &records,
                                        const StyleSpaceConfig &config);

// Keys whose target exceeds kDuplicationWarnFactor x their source count.
std::vector<std::string> DuplicationWarnings(const DistributionPlan &plan);

// Population standard deviation, exact integer moments until the final
// division. 0 for empty or single-valued input.
double StdDevReport(const CombinationCounts &counts);
double PopulationStdDev(const std::vector<std::uint64_t> &values);

OrderedJson PlanToJson(const DistributionPlan &plan);
DistributionPlan PlanFromJson(const Json &doc);
void WritePlan(const std::filesystem::path &path, const DistributionPlan &plan);
DistributionPlan ReadPlan(const std::filesystem::path &path);

}  // namespace microstyle
