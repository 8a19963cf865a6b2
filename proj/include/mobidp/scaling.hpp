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

#ifndef MOBIDP_SCALING_HPP_
#define MOBIDP_SCALING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mobidp/metrics.hpp"

namespace mobidp {

// A group of metric cells on which the effect of a logic update is uniform.
// Members share family and granularity level. Count families only; the
// residential ratio is not additive and cannot be scaled this way.
struct MetricGroup {
  std::string id;
  MetricFamily family = MetricFamily::kVisits;
  std::optional<PlaceCategory> category;  // required for visits groups
  int level = 0;
  std::vector<std::string> region_ids;
  Date period_start;
  Date period_end;
  std::optional<int> weekday;  // 0 = Monday .. 6 = Sunday

  std::vector<Date> period_dates() const;
  std::vector<DailyMetricKey> member_keys() const;
  MetricKind kind() const;
};

// Line-delimited JSON group definitions.
std::vector<MetricGroup> load_groups(const std::string& path);

struct ScalingFactor {
  std::string group_id;
  double s_g = 0.0;  // sum of previously published noisy metrics
  double s_n = 0.0;  // noisy sum of recomputed metrics
  double factor = 0.0;  // s_n / s_g
  bool usable = false;  // false when s_g or s_n is zero
  double budget_fraction = 0.10;
  double epsilon_spent = 0.0;  // budget_fraction * level epsilon
  double noise_scale = 0.0;    // Laplace scale used on s_n
};

// Plain sum of already-noisy member values; post-processing, consumes no
// budget. Throws on an empty group or a missing member cell.
double old_noisy_sum(const MetricStore& store, const MetricGroup& group);

// Raw recomputed group sum plus Laplace(sensitivity / (budget_fraction *
// level epsilon)). Throws on a nonpositive budget fraction.
double new_noisy_sum(double raw_sum, MetricKind kind, int level,
                     double budget_fraction, double sensitivity, Rng& rng);

// Conservative default group-sum sensitivity: per-cell sensitivity times the
// number of days in the period a user can contribute.
double default_group_sensitivity(const MetricGroup& group);

// Computes s_g from the published store and s_n from a noiseless
// recomputation, with a per-group seed derived from root_seed.
ScalingFactor compute_scaling_factor(const MetricStore& published,
                                     const MetricStore& recomputed_raw,
                                     const MetricGroup& group,
                                     double budget_fraction,
                                     std::optional<double> sensitivity,
                                     std::uint64_t root_seed,
                                     bool noise_enabled = true);

enum class ScalingDirection { kScaleBaseline, kScaleDaily };

// v * (s_n/s_g) when scaling the baseline, v * (s_g/s_n) when scaling the
// daily counts. Throws if the factor is unusable.
double apply_scaling(double value, const ScalingFactor& factor,
                     ScalingDirection direction);

// Applies the factor to every cell of the group's (family, category, region)
// slice dated strictly after the group period. Other cells pass through.
MetricStore apply_scaling_to_store(const MetricStore& store,
                                   const MetricGroup& group,
                                   const ScalingFactor& factor,
                                   ScalingDirection direction);

// Factor ledger, line-delimited JSON with budget accounting.
void write_factor_ledger(const std::vector<ScalingFactor>& factors,
                         const std::string& path);

}  // namespace mobidp

#endif  // MOBIDP_SCALING_HPP_
