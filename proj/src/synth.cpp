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

#include "mobidp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace mobidp {

using nlohmann::json;

namespace {

double sample_normal(double mean, double spread, Rng& rng) {
  // Box-Muller; one draw per call keeps seed bookkeeping simple.
  double u1;
  do {
    u1 = rng.uniform();
  } while (u1 == 0.0);
  const double u2 = rng.uniform();
  return mean + spread * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario: " + path);
  json j = json::parse(in);
  ScenarioConfig c;
  c.seed = j.value("seed", 0ULL);
  for (const json& r : j.at("regions")) {
    c.regions.push_back({r.at("id").get<std::string>(),
                         r.at("name").get<std::string>(),
                         r.at("level").get<int>(),
                         r.value("parent_id", std::string{}),
                         r.at("area_km2").get<double>(),
                         r.at("country_code").get<std::string>()});
  }
  c.start_date = Date::parse(j.at("start_date").get<std::string>());
  c.end_date = Date::parse(j.at("end_date").get<std::string>());
  c.cutover_date = Date::parse(j.at("cutover_date").get<std::string>());
  if (j.contains("baseline_start")) {
    c.baseline_start = Date::parse(j.at("baseline_start").get<std::string>());
  }
  if (j.contains("baseline_end")) {
    c.baseline_end = Date::parse(j.at("baseline_end").get<std::string>());
  }
  c.users_per_county = j.value("users_per_county", 50);
  if (j.contains("visit_rates")) {
    for (const auto& [name, rate] : j.at("visit_rates").items()) {
      c.visit_rates[category_from_string(name)] = rate.get<double>();
    }
  }
  c.lockdown_visit_multiplier = j.value("lockdown_visit_multiplier", 0.5);
  c.travel_rate = j.value("travel_rate", 0.0);
  c.residential_mean_before = j.value("residential_mean_before", 12.0);
  c.residential_mean_after = j.value("residential_mean_after", 14.0);
  c.residential_spread = j.value("residential_spread", 2.0);
  c.workplace_participation = j.value("workplace_participation", 0.6);
  c.workplace_hours_mean = j.value("workplace_hours_mean", 8.0);
  c.workplace_hours_spread = j.value("workplace_hours_spread", 2.0);
  c.workplace_post_multiplier = j.value("workplace_post_multiplier", 1.0);
  return c;
}

ValidationResult validate_scenario(const ScenarioConfig& config) {
  ValidationResult tree = RegionTree::validate(config.regions);
  if (!tree.ok) return tree;
  for (const auto& [category, rate] : config.visit_rates) {
    if (rate < 0.0) {
      return {false, "negative visit rate for " + to_string(category)};
    }
  }
  if (config.cutover_date < config.start_date ||
      config.cutover_date > config.end_date) {
    return {false, "cut-over date outside the simulation range"};
  }
  if (config.baseline_start < config.start_date ||
      config.baseline_end > config.end_date) {
    return {false, "baseline window not covered by the simulation range"};
  }
  if (config.users_per_county < 0) return {false, "negative user count"};
  return {true, ""};
}

Scenario generate(const ScenarioConfig& config) {
  ValidationResult valid = validate_scenario(config);
  if (!valid.ok) throw std::invalid_argument("invalid scenario: " + valid.message);
  RegionTree tree(config.regions);

  // Home region path per county.
  std::vector<RegionPath> county_paths;
  for (const RegionNode* county : tree.at_level(2)) {
    const RegionNode* state = tree.find(county->parent_id);
    county_paths.push_back({state->parent_id, state->id, county->id});
  }

  Scenario scenario;
  const auto dates = date_range(config.start_date, config.end_date);

  // Independent ground-truth tallies: distinct users per visit cell, hour
  // sums and user counts per residential cell, qualifying users per
  // workplace cell.
  std::map<std::pair<DailyMetricKey, MetricKind>, double> truth;

  for (std::size_t county_idx = 0; county_idx < county_paths.size();
       ++county_idx) {
    const RegionPath& home = county_paths[county_idx];
    for (int u = 0; u < config.users_per_county; ++u) {
      const std::string user_id =
          "u" + std::to_string(county_idx) + "_" + std::to_string(u);
      Rng trait_rng(derive_seed(config.seed, "trait|" + user_id));
      const bool works = trait_rng.uniform() < config.workplace_participation;

      for (const Date& date : dates) {
        Rng rng(derive_seed(config.seed, "day|" + user_id + "|" + date.to_string()));
        const bool post = date >= config.cutover_date;

        // Visits.
        std::set<CategoryRegionPair> day_pairs[kNumGranularityLevels];
        const double mult = post ? config.lockdown_visit_multiplier : 1.0;
        for (PlaceCategory category : kAllCategories) {
          auto it = config.visit_rates.find(category);
          const double rate = it == config.visit_rates.end() ? 0.0 : it->second;
          if (rng.uniform() >= rate * mult) continue;
          std::vector<RegionPath> destinations = {home};
          if (config.travel_rate > 0.0 && county_paths.size() > 1 &&
              rng.uniform() < config.travel_rate) {
            std::size_t other =
                rng.uniform_int(county_paths.size() - 1);
            if (other >= county_idx) ++other;
            destinations.push_back(county_paths[other]);
          }
          for (const RegionPath& path : destinations) {
            scenario.events.visits.push_back({user_id, date, category, path});
            for (int level = 0; level < kNumGranularityLevels; ++level) {
              day_pairs[level].insert({category, path[level]});
            }
          }
        }
        for (int level = 0; level < kNumGranularityLevels; ++level) {
          for (const CategoryRegionPair& pair : day_pairs[level]) {
            DailyMetricKey key{pair.region_id, date, MetricFamily::kVisits,
                               pair.category};
            truth[{key, MetricKind::kVisits}] += 1.0;
          }
        }

        // Residential: one stay per user per day.
        const double res_mean = post ? config.residential_mean_after
                                     : config.residential_mean_before;
        const double hours = std::clamp(
            sample_normal(res_mean, config.residential_spread, rng), 0.0, 24.0);
        scenario.events.residential.push_back({user_id, date, hours, home});
        for (int level = 0; level < kNumGranularityLevels; ++level) {
          DailyMetricKey key{home[level], date, MetricFamily::kResidential,
                             std::nullopt};
          truth[{key, MetricKind::kResidentialSum}] += hours - 12.0;
          truth[{key, MetricKind::kResidentialCount}] += 1.0;
        }

        // Workplaces.
        if (works) {
          double work_hours = std::max(
              0.0, sample_normal(config.workplace_hours_mean,
                                 config.workplace_hours_spread, rng));
          if (post) work_hours *= config.workplace_post_multiplier;
          scenario.events.work.push_back({user_id, date, work_hours, home});
          if (work_hours > 1.0) {
            for (int level = 0; level < kNumGranularityLevels; ++level) {
              DailyMetricKey key{home[level], date, MetricFamily::kWorkplaces,
                                 std::nullopt};
              truth[{key, MetricKind::kWorkplaces}] += 1.0;
            }
          }
        }
      }
    }
  }

  // Materialize the full fixed schema in the truth store; absent cells are
  // zero, with scale 0 (noiseless).
  for (const DailyMetricKey& key : materialize_fixed_schema(tree, dates)) {
    std::vector<MetricKind> kinds;
    switch (key.family) {
      case MetricFamily::kVisits: kinds = {MetricKind::kVisits}; break;
      case MetricFamily::kResidential:
        kinds = {MetricKind::kResidentialSum, MetricKind::kResidentialCount};
        break;
      case MetricFamily::kWorkplaces: kinds = {MetricKind::kWorkplaces}; break;
    }
    for (MetricKind kind : kinds) {
      NoisyMetric metric;
      metric.kind = kind;
      metric.noise = noise_spec_for(kind, tree.find(key.region_id)->level);
      metric.noise.scale_b = 0.0;
      auto it = truth.find({key, kind});
      metric.value = it == truth.end() ? 0.0 : it->second;
      scenario.ground_truth.put(key, metric);
    }
  }
  return scenario;
}

}  // namespace mobidp
