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

#ifndef MOBIDP_SYNTH_HPP_
#define MOBIDP_SYNTH_HPP_

#include <map>
#include <string>
#include <vector>

#include "mobidp/domain.hpp"
#include "mobidp/metrics.hpp"

namespace mobidp {

// Synthetic scenario with controllable ground truth. Rates are per-user
// per-day probabilities; the lockdown multiplier applies from the cut-over
// date onward.
struct ScenarioConfig {
  std::uint64_t seed = 0;
  std::vector<RegionNode> regions;
  Date start_date;
  Date end_date;
  Date cutover_date;
  Date baseline_start = Date(2020, 1, 3);
  Date baseline_end = Date(2020, 2, 6);
  int users_per_county = 50;
  std::map<PlaceCategory, double> visit_rates;
  double lockdown_visit_multiplier = 0.5;
  // Probability that a visit is mirrored into a random other county on the
  // same day; raises the per-user pair count tail.
  double travel_rate = 0.0;
  double residential_mean_before = 12.0;
  double residential_mean_after = 14.0;
  double residential_spread = 2.0;
  double workplace_participation = 0.6;
  double workplace_hours_mean = 8.0;
  double workplace_hours_spread = 2.0;
  double workplace_post_multiplier = 1.0;  // hours multiplier after cut-over
};

ScenarioConfig load_scenario(const std::string& path);
ValidationResult validate_scenario(const ScenarioConfig& config);

struct Scenario {
  EventSet events;
  // Noiseless per-cell counts/sums over the full fixed schema, tallied by
  // the generator itself (independent of the aggregation pipeline).
  MetricStore ground_truth;
};

// Deterministic given config.seed. Throws std::invalid_argument on an
// invalid config.
Scenario generate(const ScenarioConfig& config);

}  // namespace mobidp

#endif  // MOBIDP_SYNTH_HPP_
