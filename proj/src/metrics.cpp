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

#include "mobidp/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace mobidp {

using nlohmann::json;

std::string to_string(MetricFamily family) {
  switch (family) {
    case MetricFamily::kVisits: return "visits";
    case MetricFamily::kResidential: return "residential";
    case MetricFamily::kWorkplaces: return "workplaces";
  }
  throw std::invalid_argument("unknown metric family");
}

MetricFamily metric_family_from_string(const std::string& name) {
  if (name == "visits") return MetricFamily::kVisits;
  if (name == "residential") return MetricFamily::kResidential;
  if (name == "workplaces") return MetricFamily::kWorkplaces;
  throw std::invalid_argument("unknown metric family: " + name);
}

std::string DailyMetricKey::scope_string() const {
  std::string s = region_id + "|" + date.to_string() + "|" + to_string(family);
  if (category) s += "|" + to_string(*category);
  return s;
}

std::vector<DailyMetricKey> materialize_fixed_schema(
    const RegionTree& regions, std::span<const Date> dates) {
  std::vector<DailyMetricKey> keys;
  for (const RegionNode& r : regions.all()) {
    for (const Date& d : dates) {
      for (PlaceCategory c : kAllCategories) {
        keys.push_back({r.id, d, MetricFamily::kVisits, c});
      }
      keys.push_back({r.id, d, MetricFamily::kResidential, std::nullopt});
      keys.push_back({r.id, d, MetricFamily::kWorkplaces, std::nullopt});
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

void MetricStore::put(const DailyMetricKey& key, const NoisyMetric& metric) {
  entries_[{key, metric.kind}] = metric;
}

const NoisyMetric* MetricStore::get(const DailyMetricKey& key,
                                    MetricKind kind) const {
  auto it = entries_.find({key, kind});
  return it == entries_.end() ? nullptr : &it->second;
}

bool MetricStore::contains(const DailyMetricKey& key) const {
  auto it = entries_.lower_bound({key, MetricKind::kVisits});
  return it != entries_.end() && it->first.first == key;
}

std::vector<DailyMetricKey> MetricStore::keys() const {
  std::vector<DailyMetricKey> out;
  for (const auto& [entry_key, metric] : entries_) {
    if (out.empty() || !(out.back() == entry_key.first)) {
      out.push_back(entry_key.first);
    }
  }
  return out;
}

void MetricStore::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write metric store: " + path);
  for (const auto& [entry_key, metric] : entries_) {
    const DailyMetricKey& key = entry_key.first;
    json j{{"region", key.region_id},
           {"date", key.date.to_string()},
           {"family", to_string(key.family)},
           {"kind", to_string(metric.kind)},
           {"value", metric.value},
           {"scale", metric.noise.scale_b},
           {"epsilon", metric.noise.epsilon},
           {"sensitivity", metric.noise.sensitivity}};
    if (key.category) j["category"] = to_string(*key.category);
    out << j.dump() << "\n";
  }
}

MetricStore MetricStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metric store: " + path);
  MetricStore store;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    DailyMetricKey key;
    key.region_id = j.at("region").get<std::string>();
    key.date = Date::parse(j.at("date").get<std::string>());
    key.family = metric_family_from_string(j.at("family").get<std::string>());
    if (j.contains("category")) {
      key.category = category_from_string(j.at("category").get<std::string>());
    }
    NoisyMetric metric;
    metric.kind = metric_kind_from_string(j.at("kind").get<std::string>());
    metric.value = j.at("value").get<double>();
    metric.noise.scale_b = j.at("scale").get<double>();
    metric.noise.epsilon = j.at("epsilon").get<double>();
    metric.noise.sensitivity = j.at("sensitivity").get<double>();
    store.put(key, metric);
  }
  return store;
}

double residential_ratio(double noisy_sum, double noisy_count) {
  if (noisy_count == 0.0) {
    if (noisy_sum > 0.0) return 24.0;
    if (noisy_sum < 0.0) return 0.0;
    return 12.0;
  }
  return std::clamp(noisy_sum / noisy_count + 12.0, 0.0, 24.0);
}

namespace {

NoisyMetric make_noisy(MetricKind kind, int level, double raw,
                       bool noise_enabled, Rng& rng) {
  NoisyMetric metric;
  metric.kind = kind;
  metric.noise = noise_spec_for(kind, level);
  metric.value = raw;
  if (noise_enabled) {
    metric.value += sample_laplace(metric.noise.scale_b, rng);
  } else {
    metric.noise.scale_b = 0.0;  // zero-width CIs downstream
  }
  return metric;
}

}  // namespace

NoisyMetric visits_count(std::span<const UserPair> capped_pairs,
                         const DailyMetricKey& key, int level,
                         bool noise_enabled, Rng& rng) {
  if (key.family != MetricFamily::kVisits || !key.category) {
    throw std::invalid_argument("visits_count: key is not a visits cell");
  }
  std::set<std::string> users;
  for (const UserPair& up : capped_pairs) {
    if (up.pair.category == *key.category && up.pair.region_id == key.region_id) {
      users.insert(up.user_id);
    }
  }
  return make_noisy(MetricKind::kVisits, level,
                    static_cast<double>(users.size()), noise_enabled, rng);
}

ResidentialCell residential_mean(std::span<const ResidentialStay> stays,
                                 int level, bool noise_enabled, Rng& rng) {
  double sum = 0.0;
  for (const ResidentialStay& stay : stays) {
    sum += std::clamp(stay.hours_at_residence, 0.0, 24.0) - 12.0;
  }
  ResidentialCell cell;
  cell.noisy_sum =
      make_noisy(MetricKind::kResidentialSum, level, sum, noise_enabled, rng);
  cell.noisy_count =
      make_noisy(MetricKind::kResidentialCount, level,
                 static_cast<double>(stays.size()), noise_enabled, rng);
  cell.ratio_hours = residential_ratio(cell.noisy_sum.value, cell.noisy_count.value);
  return cell;
}

NoisyMetric workplaces_count(std::span<const WorkStay> stays, int level,
                             bool noise_enabled, Rng& rng) {
  double count = 0.0;
  for (const WorkStay& stay : stays) {
    if (stay.hours_at_workplace > 1.0) count += 1.0;  // strictly more than 1h
  }
  return make_noisy(MetricKind::kWorkplaces, level, count, noise_enabled, rng);
}

MetricStore aggregate(const RegionTree& regions, const EventSet& events,
                      std::span<const Date> dates,
                      const AggregateOptions& options) {
  std::map<std::string, int> region_level;
  for (const RegionNode& r : regions.all()) region_level[r.id] = r.level;

  using RawKey = std::pair<DailyMetricKey, MetricKind>;
  std::map<RawKey, double> raw;

  // Visits: dedupe and cap per (user, day, level), then count distinct
  // users per cell. After dedupe a user holds each pair at most once, so
  // incrementing per retained pair counts unique users.
  std::map<std::pair<std::string, Date>, std::vector<VisitEvent>> by_user_day;
  for (const VisitEvent& e : events.visits) {
    if (!regions.is_valid_path(e.region_path)) {
      throw std::invalid_argument("visit event with invalid region path for user " +
                                  e.user_id);
    }
    by_user_day[{e.user_id, e.date}].push_back(e);
  }
  for (const auto& [user_day, user_events] : by_user_day) {
    for (int level = 0; level < kNumGranularityLevels; ++level) {
      auto pairs = dedupe_pairs(user_events, level);
      Rng cap_rng(derive_seed(options.root_seed,
                              "cap|" + user_day.first + "|" +
                                  user_day.second.to_string() + "|" +
                                  std::to_string(level)));
      pairs = cap_contributions(std::move(pairs), options.cap, cap_rng);
      for (const CategoryRegionPair& p : pairs) {
        DailyMetricKey key{p.region_id, user_day.second, MetricFamily::kVisits,
                           p.category};
        raw[{key, MetricKind::kVisits}] += 1.0;
      }
    }
  }

  // Residential: per-user hours clamped to [0,24], offset by 12.
  for (const ResidentialStay& stay : events.residential) {
    for (int level = 0; level < kNumGranularityLevels; ++level) {
      DailyMetricKey key{stay.region_path[level], stay.date,
                         MetricFamily::kResidential, std::nullopt};
      raw[{key, MetricKind::kResidentialSum}] +=
          std::clamp(stay.hours_at_residence, 0.0, 24.0) - 12.0;
      raw[{key, MetricKind::kResidentialCount}] += 1.0;
    }
  }

  // Workplaces: users above the 1-hour threshold, keyed by residence.
  for (const WorkStay& stay : events.work) {
    if (stay.hours_at_workplace <= 1.0) continue;
    for (int level = 0; level < kNumGranularityLevels; ++level) {
      DailyMetricKey key{stay.residence_region_path[level], stay.date,
                         MetricFamily::kWorkplaces, std::nullopt};
      raw[{key, MetricKind::kWorkplaces}] += 1.0;
    }
  }

  // Fill the fixed schema; absent data means zero, and noise is added to
  // every cell including zero-valued ones.
  MetricStore store;
  const auto schema = materialize_fixed_schema(regions, dates);
  for (const DailyMetricKey& key : schema) {
    const int level = region_level.at(key.region_id);
    std::vector<MetricKind> kinds;
    switch (key.family) {
      case MetricFamily::kVisits: kinds = {MetricKind::kVisits}; break;
      case MetricFamily::kResidential:
        kinds = {MetricKind::kResidentialSum, MetricKind::kResidentialCount};
        break;
      case MetricFamily::kWorkplaces: kinds = {MetricKind::kWorkplaces}; break;
    }
    for (MetricKind kind : kinds) {
      auto it = raw.find({key, kind});
      const double value = it == raw.end() ? 0.0 : it->second;
      Rng noise_rng(derive_seed(options.root_seed,
                                "noise|" + key.scope_string() + "|" +
                                    to_string(kind)));
      store.put(key, make_noisy(kind, level, value, options.noise_enabled,
                                noise_rng));
    }
  }
  return store;
}

}  // namespace mobidp
