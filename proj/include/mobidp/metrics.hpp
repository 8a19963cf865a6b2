//
// Copyright 2026 The mobidp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MOBIDP_METRICS_HPP_
#define MOBIDP_METRICS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mobidp/bounding.hpp"
#include "mobidp/domain.hpp"
#include "mobidp/dp.hpp"

namespace mobidp {

enum class MetricFamily { kVisits, kResidential, kWorkplaces };

std::string to_string(MetricFamily family);
MetricFamily metric_family_from_string(const std::string& name);

// Identifies one metric cell: a region-day, a metric family, and (for visits
// only) a place category.
struct DailyMetricKey {
  std::string region_id;
  Date date;
  MetricFamily family = MetricFamily::kVisits;
  std::optional<PlaceCategory> category;  // present iff family == kVisits

  std::string scope_string() const;  // stable key for seed derivation

  auto tie() const {
    return std::make_tuple(region_id, date, family, category);
  }
  bool operator==(const DailyMetricKey& o) const { return tie() == o.tie(); }
  bool operator<(const DailyMetricKey& o) const { return tie() < o.tie(); }
};

// The exact cross-product of keys for the given regions and dates: every
// region at every level x day x (7 visit categories + residential +
// workplaces). Aggregation fills every key; absent data means zero.
std::vector<DailyMetricKey> materialize_fixed_schema(
    const RegionTree& regions, std::span<const Date> dates);

// Anonymized metric cells, keyed by (key, mechanism kind). A residential key
// owns two entries (noisy sum, noisy count); the ratio is derived.
class MetricStore {
 public:
  void put(const DailyMetricKey& key, const NoisyMetric& metric);
  const NoisyMetric* get(const DailyMetricKey& key, MetricKind kind) const;
  bool contains(const DailyMetricKey& key) const;

  // All distinct keys, in deterministic order.
  std::vector<DailyMetricKey> keys() const;
  std::size_t entry_count() const { return entries_.size(); }

  // Line-delimited JSON: key fields + noisy value + noise scale + kind.
  void save(const std::string& path) const;
  static MetricStore load(const std::string& path);

 private:
  using EntryKey = std::pair<DailyMetricKey, MetricKind>;
  std::map<EntryKey, NoisyMetric> entries_;
};

// Derived residential ratio: clamp(s_n/c_n + 12, 0, 24). A zero noisy count
// yields the boundary by sign of the noisy sum, and 12 when the sum is also
// zero.
double residential_ratio(double noisy_sum, double noisy_count);

// -- Per-cell mechanisms -----------------------------------------------------

// A user's retained pair at one level, tagged with the contributing user.
struct UserPair {
  std::string user_id;
  CategoryRegionPair pair;
};

// Count of distinct users contributing the key's <category, region> pair,
// plus Laplace noise at the key's level. Input must already be deduplicated
// and capped. Throws std::invalid_argument on a non-visits key.
NoisyMetric visits_count(std::span<const UserPair> capped_pairs,
                         const DailyMetricKey& key, int level,
                         bool noise_enabled, Rng& rng);

struct ResidentialCell {
  NoisyMetric noisy_sum;
  NoisyMetric noisy_count;
  double ratio_hours = 12.0;
};

// Bounded-mean mechanism: per-user hours clamped to [0, 24] and offset by
// 12 so each value lies in [-12, 12]; noisy sum and noisy count get
// independent Laplace noise; ratio is derived and clamped. An empty region
// produces the zero-data cell, not an error.
ResidentialCell residential_mean(std::span<const ResidentialStay> stays,
                                 int level, bool noise_enabled, Rng& rng);

// Count of users with strictly more than 1 hour at their workplace, noised.
NoisyMetric workplaces_count(std::span<const WorkStay> stays, int level,
                             bool noise_enabled, Rng& rng);

// -- Full aggregation --------------------------------------------------------

struct AggregateOptions {
  std::uint64_t root_seed = 0;
  bool noise_enabled = true;  // disable only for tests / ground truth
  ContributionCap cap;
};

// Runs extract-and-bound plus aggregation over the fixed schema: dedupe and
// cap visit pairs per (user, day, level), count distinct users per cell,
// residential bounded mean and workplace counts per region-day, then add
// noise once per cell with a seed derived from root_seed and the cell key.
MetricStore aggregate(const RegionTree& regions, const EventSet& events,
                      std::span<const Date> dates,
                      const AggregateOptions& options);

}  // namespace mobidp

#endif  // MOBIDP_METRICS_HPP_
