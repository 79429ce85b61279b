#include "microstyle/distribution.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "microstyle/error.h"
#include "microstyle/rng.h"

namespace microstyle {

using u128 = unsigned __int128;

std::uint64_t DistributionPlan::total_target() const { return SumCounts(target_counts); }

CombinationCounts Tally(const std::vector<SentenceRecord> &records,
                        const StyleSpaceConfig &config) {
  CombinationCounts counts;
  for (auto &key : EnumerateCombinations(config)) counts.emplace_back(std::move(key), 0);
  for (const auto &record : records) {
    counts[CombinationIndex(CombinationOf(record, config), config)].second += 1;
  }
  return counts;
}

std::uint64_t SumCounts(const CombinationCounts &counts) {
  std::uint64_t sum = 0;
  for (const auto &kv : counts) sum += kv.second;
  return sum;
}

std::uint64_t FloorCount(double share, std::uint64_t total) {
  if (!(share >= 0.0 && share <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "floor share must lie in [0, 1]");
  }
  const double product = share * static_cast<double>(total);
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(product));
}

DistributionPlan PlanBalanced(const CombinationCounts &source_counts, double floor_share,
                              std::uint64_t seed) {
  const std::uint64_t total = SumCounts(source_counts);
  if (total == 0) throw Error(ErrorKind::kAllCombinationsEmpty, "nothing to balance");

  std::uint64_t min_count = source_counts.front().second;
  for (const auto &kv : source_counts) min_count = std::min(min_count, kv.second);
  const std::uint64_t target = std::max(min_count, FloorCount(floor_share, total));

  DistributionPlan plan;
  plan.mode = DatasetMode::kBalanced;
  plan.source_counts = source_counts;
  plan.seed = seed;
  plan.floor_share = floor_share;
  for (const auto &[key, count] : source_counts) {
    plan.target_counts.emplace_back(key, target);
    if (count < target) plan.upsampled_keys.push_back(key);
  }
  return plan;
}

std::vector<std::uint64_t> LargestRemainder(const std::vector<std::uint64_t> &weights,
                                            std::uint64_t total) {
  const u128 weight_sum = std::accumulate(weights.begin(), weights.end(), u128{0});
  if (weight_sum == 0) throw Error(ErrorKind::kAllCombinationsEmpty, "all weights are zero");

  std::vector<std::uint64_t> seats(weights.size());
  std::vector<u128> remainders(weights.size());
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const u128 product = static_cast<u128>(total) * weights[i];
    seats[i] = static_cast<std::uint64_t>(product / weight_sum);
    remainders[i] = product % weight_sum;
    assigned += seats[i];
  }

  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::uint64_t k = 0; k < total - assigned; ++k) seats[order[k]] += 1;
  return seats;
}

DistributionPlan PlanSkewed(const CombinationCounts &source_counts, std::uint64_t total,
                            std::uint64_t seed, double floor_share) {
  const std::uint64_t available = SumCounts(source_counts);
  if (available == 0) throw Error(ErrorKind::kAllCombinationsEmpty, "nothing to apportion");
  if (total == 0) throw Error(ErrorKind::kInvalidConfig, "skewed total must be >= 1");
  if (total > available) {
    throw Error(ErrorKind::kInfeasibleTotal, "requested " + std::to_string(total) +
                                                 " but only " + std::to_string(available) +
                                                 " records exist");
  }

  const std::size_t n = source_counts.size();
  std::vector<std::uint64_t> targets(n, 0);
  std::vector<bool> capped(n, false);
  std::uint64_t remaining = total;
  for (;;) {
    std::vector<std::uint64_t> weights(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!capped[i]) weights[i] = source_counts[i].second;
    }
    auto seats = LargestRemainder(weights, remaining);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (capped[i]) continue;
      if (seats[i] > source_counts[i].second) {
        capped[i] = true;
        targets[i] = source_counts[i].second;
        remaining -= targets[i];
        changed = true;
      } else {
        targets[i] = seats[i];
      }
    }
    if (!changed) break;
  }

  DistributionPlan plan;
  plan.mode = DatasetMode::kSkewed;
  plan.source_counts = source_counts;
  plan.seed = seed;
  plan.floor_share = floor_share;
  for (std::size_t i = 0; i < n; ++i) plan.target_counts.emplace_back(source_counts[i].first, targets[i]);
  return plan;
}

std::vector<SentenceRecord> Materialize(const DistributionPlan &plan,
                                        const std::vector<SentenceRecord> &records,
                                        const StyleSpaceConfig &config) {
  std::map<CombinationKey, std::vector<const SentenceRecord *>> groups;
  for (const auto &[key, target] : plan.target_counts) {
    CombinationIndex(key, config);
    groups[key];
  }
  for (const auto &record : records) {
    auto it = groups.find(CombinationOf(record, config));
    if (it != groups.end()) it->second.push_back(&record);
  }

  std::vector<SentenceRecord> out;
  out.reserve(plan.total_target());
  for (const auto &[key, target] : plan.target_counts) {
    if (target == 0) continue;
    auto &pool = groups[key];
    std::sort(pool.begin(), pool.end(),
              [](const SentenceRecord *a, const SentenceRecord *b) { return a->id < b->id; });
    Xoshiro256 rng(StreamSeed(plan.seed, key));
    if (target <= pool.size()) {
      rng.Shuffle(pool);
      for (std::uint64_t i = 0; i < target; ++i) out.push_back(*pool[i]);
    } else if (plan.mode == DatasetMode::kBalanced && !pool.empty()) {
      for (std::uint64_t i = 0; i < target; ++i) out.push_back(*pool[rng.UniformBelow(pool.size())]);
    } else {
      throw Error(ErrorKind::kTargetExceedsAvailable,
                  key + ": target " + std::to_string(target) + " but " +
                      std::to_string(pool.size()) + " records available");
    }
  }
  return out;
}

std::vector<std::string> DuplicationWarnings(const DistributionPlan &plan) {
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < plan.target_counts.size(); ++i) {
    const auto &[key, target] = plan.target_counts[i];
    const std::uint64_t source = i < plan.source_counts.size() ? plan.source_counts[i].second : 0;
    if (source > 0 && static_cast<double>(target) > kDuplicationWarnFactor * static_cast<double>(source)) {
      warnings.push_back(key + ": " + std::to_string(target) + " draws from " +
                         std::to_string(source) + " records");
    }
  }
  return warnings;
}

double PopulationStdDev(const std::vector<std::uint64_t> &values) {
  if (values.size() < 2) return 0.0;
  u128 sum = 0, sum_sq = 0;
  for (auto v : values) {
    sum += v;
    sum_sq += static_cast<u128>(v) * v;
  }
  const u128 n = values.size();
  // n^2 * variance = n * sum(x^2) - sum(x)^2, exact and non-negative.
  const u128 scaled = n * sum_sq - sum * sum;
  return std::sqrt(static_cast<double>(scaled)) / static_cast<double>(values.size());
}

double StdDevReport(const CombinationCounts &counts) {
  std::vector<std::uint64_t> values;
  values.reserve(counts.size());
  for (const auto &kv : counts) values.push_back(kv.second);
  return PopulationStdDev(values);
}

OrderedJson PlanToJson(const DistributionPlan &plan) {
  OrderedJson doc;
  doc["mode"] = DatasetModeName(plan.mode);
  doc["seed"] = plan.seed;
  doc["floor_share"] = plan.floor_share;
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < plan.target_counts.size(); ++i) {
    OrderedJson row;
    row["key"] = plan.target_counts[i].first;
    row["source"] = i < plan.source_counts.size() ? plan.source_counts[i].second : 0;
    row["target"] = plan.target_counts[i].second;
    rows.push_back(std::move(row));
  }
  doc["combinations"] = std::move(rows);
  doc["upsampled_keys"] = plan.upsampled_keys;
  doc["total_target"] = plan.total_target();
  return doc;
}

DistributionPlan PlanFromJson(const Json &doc) {
  auto bad = [](const std::string &why) { return Error(ErrorKind::kInvalidConfig, "plan: " + why); };
  if (!doc.is_object() || !doc.contains("mode") || !doc.contains("combinations")) {
    throw bad("missing 'mode' or 'combinations'");
  }
  DistributionPlan plan;
  plan.mode = ParseDatasetMode(doc["mode"].get<std::string>());
  if (plan.mode == DatasetMode::kRaw) throw bad("mode must be balanced or skewed");
  plan.seed = doc.value("seed", std::uint64_t{0});
  plan.floor_share = doc.value("floor_share", kDefaultFloorShare);
  for (const auto &row : doc["combinations"]) {
    if (!row.contains("key") || !row.contains("target")) throw bad("combination row lacks key/target");
    const auto key = row["key"].get<std::string>();
    plan.source_counts.emplace_back(key, row.value("source", std::uint64_t{0}));
    plan.target_counts.emplace_back(key, row["target"].get<std::uint64_t>());
  }
  if (doc.contains("upsampled_keys")) {
    plan.upsampled_keys = doc["upsampled_keys"].get<std::vector<std::string>>();
  }
  return plan;
}

void WritePlan(const std::filesystem::path &path, const DistributionPlan &plan) {
  WriteJsonFile(path, PlanToJson(plan));
}

DistributionPlan ReadPlan(const std::filesystem::path &path) {
  try {
    return PlanFromJson(ReadJsonFile(path));
  } catch (const Json::exception &e) {
    throw Error(ErrorKind::kInvalidConfig, path.string() + ": " + e.what());
  }
}

}  // namespace microstyle
