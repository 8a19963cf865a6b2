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

#include "mobidp/scaling.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mobidp {

using nlohmann::json;

std::vector<Date> MetricGroup::period_dates() const {
  std::vector<Date> out;
  for (Date d = period_start; d <= period_end; d = d + 1) {
    if (!weekday || d.weekday() == *weekday) out.push_back(d);
  }
  return out;
}

std::vector<DailyMetricKey> MetricGroup::member_keys() const {
  std::vector<DailyMetricKey> keys;
  for (const std::string& region : region_ids) {
    for (Date d : period_dates()) {
      keys.push_back({region, d, family, category});
    }
  }
  return keys;
}

MetricKind MetricGroup::kind() const {
  switch (family) {
    case MetricFamily::kVisits: return MetricKind::kVisits;
    case MetricFamily::kWorkplaces: return MetricKind::kWorkplaces;
    case MetricFamily::kResidential:
      throw std::invalid_argument(
          "scaling groups support count families only; the residential "
          "ratio is not additive");
  }
  throw std::invalid_argument("unknown family");
}

std::vector<MetricGroup> load_groups(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group config: " + path);
  std::vector<MetricGroup> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    MetricGroup g;
    g.id = j.at("group_id").get<std::string>();
    g.family = metric_family_from_string(j.at("family").get<std::string>());
    if (j.contains("category")) {
      g.category = category_from_string(j.at("category").get<std::string>());
    }
    g.level = j.at("level").get<int>();
    g.region_ids = j.at("regions").get<std::vector<std::string>>();
    g.period_start = Date::parse(j.at("period_start").get<std::string>());
    g.period_end = Date::parse(j.at("period_end").get<std::string>());
    if (j.contains("weekday")) g.weekday = j.at("weekday").get<int>();
    if (g.family == MetricFamily::kVisits && !g.category) {
      throw std::runtime_error("visits group " + g.id + " needs a category");
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

double old_noisy_sum(const MetricStore& store, const MetricGroup& group) {
  const auto keys = group.member_keys();
  if (keys.empty()) throw std::invalid_argument("empty scaling group " + group.id);
  double sum = 0.0;
  for (const DailyMetricKey& key : keys) {
    const NoisyMetric* metric = store.get(key, group.kind());
    if (metric == nullptr) {
      throw std::runtime_error("group " + group.id + " member missing: " +
                               key.scope_string());
    }
    sum += metric->value;
  }
  return sum;
}

double new_noisy_sum(double raw_sum, MetricKind kind, int level,
                     double budget_fraction, double sensitivity, Rng& rng) {
  if (!(budget_fraction > 0.0)) {
    throw std::invalid_argument("budget fraction must be positive");
  }
  const double level_epsilon = noise_spec_for(kind, level).epsilon;
  const double scale = sensitivity / (budget_fraction * level_epsilon);
  return raw_sum + sample_laplace(scale, rng);
}

double default_group_sensitivity(const MetricGroup& group) {
  const double per_cell = noise_spec_for(group.kind(), group.level).sensitivity;
  return per_cell * static_cast<double>(group.period_dates().size());
}

ScalingFactor compute_scaling_factor(const MetricStore& published,
                                     const MetricStore& recomputed_raw,
                                     const MetricGroup& group,
                                     double budget_fraction,
                                     std::optional<double> sensitivity,
                                     std::uint64_t root_seed,
                                     bool noise_enabled) {
  ScalingFactor factor;
  factor.group_id = group.id;
  factor.budget_fraction = budget_fraction;
  factor.s_g = old_noisy_sum(published, group);

  double raw_sum = 0.0;
  for (const DailyMetricKey& key : group.member_keys()) {
    const NoisyMetric* metric = recomputed_raw.get(key, group.kind());
    if (metric == nullptr) {
      throw std::runtime_error("group " + group.id +
                               " recomputed member missing: " +
                               key.scope_string());
    }
    raw_sum += metric->value;
  }
  const double sens = sensitivity.value_or(default_group_sensitivity(group));
  const double level_epsilon = noise_spec_for(group.kind(), group.level).epsilon;
  factor.epsilon_spent = budget_fraction * level_epsilon;
  factor.noise_scale = sens / (budget_fraction * level_epsilon);
  if (noise_enabled) {
    Rng rng(derive_seed(root_seed, "scaling|" + group.id));
    factor.s_n = new_noisy_sum(raw_sum, group.kind(), group.level,
                               budget_fraction, sens, rng);
  } else {
    factor.s_n = raw_sum;
    factor.noise_scale = 0.0;
  }
  if (factor.s_g != 0.0 && factor.s_n != 0.0) {
    factor.usable = true;
    factor.factor = factor.s_n / factor.s_g;
  }
  return factor;
}

double apply_scaling(double value, const ScalingFactor& factor,
                     ScalingDirection direction) {
  if (!factor.usable) {
    throw std::invalid_argument("scaling factor for group " + factor.group_id +
                                " is unusable (zero sum)");
  }
  return direction == ScalingDirection::kScaleBaseline
             ? value * (factor.s_n / factor.s_g)
             : value * (factor.s_g / factor.s_n);
}

MetricStore apply_scaling_to_store(const MetricStore& store,
                                   const MetricGroup& group,
                                   const ScalingFactor& factor,
                                   ScalingDirection direction) {
  MetricStore out;
  for (const DailyMetricKey& key : store.keys()) {
    for (MetricKind kind :
         {MetricKind::kVisits, MetricKind::kResidentialSum,
          MetricKind::kResidentialCount, MetricKind::kWorkplaces}) {
      const NoisyMetric* metric = store.get(key, kind);
      if (metric == nullptr) continue;
      NoisyMetric scaled = *metric;
      const bool in_slice =
          key.family == group.family && key.category == group.category &&
          std::find(group.region_ids.begin(), group.region_ids.end(),
                    key.region_id) != group.region_ids.end();
      if (in_slice && key.date > group.period_end) {
        scaled.value = apply_scaling(scaled.value, factor, direction);
      }
      out.put(key, scaled);
    }
  }
  return out;
}

void write_factor_ledger(const std::vector<ScalingFactor>& factors,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write factor ledger: " + path);
  for (const ScalingFactor& f : factors) {
    out << json{{"group_id", f.group_id},
                {"s_g", f.s_g},
                {"s_n", f.s_n},
                {"factor", f.factor},
                {"usable", f.usable},
                {"budget_fraction", f.budget_fraction},
                {"epsilon_spent", f.epsilon_spent},
                {"noise_scale", f.noise_scale}}
               .dump()
        << "\n";
  }
}

}  // namespace mobidp
