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

#include "mobidp/pipeline.hpp"

#include <filesystem>

namespace mobidp {

void run_generate(const std::string& scenario_path, const std::string& out_dir) {
  ScenarioConfig config = load_scenario(scenario_path);
  Scenario scenario = generate(config);
  std::filesystem::create_directories(out_dir);
  RegionTree tree(config.regions);
  tree.save(out_dir + "/regions.jsonl");
  save_events(scenario.events, out_dir);
  scenario.ground_truth.save(out_dir + "/truth_store.jsonl");
}

void run_aggregate(const AggregateConfig& config) {
  RegionTree tree = RegionTree::load(config.regions_path);
  EventSet events = load_events(config.events_dir);
  const auto dates = date_range(config.start_date, config.end_date);
  AggregateOptions options;
  options.root_seed = config.root_seed;
  options.noise_enabled = config.noise_enabled;
  options.cap = config.cap;
  MetricStore store = aggregate(tree, events, dates, options);
  store.save(config.store_path);
}

void run_report(const ReportFileConfig& config) {
  RegionTree tree = RegionTree::load(config.regions_path);
  MetricStore store = MetricStore::load(config.store_path);
  const auto dates = date_range(config.start_date, config.end_date);
  Report report = generate_report(store, tree, dates, config.report);
  write_report(report, config.csv_path, config.sidecar_path);
}

std::vector<AuditRecord> run_audit(long trials, std::uint64_t seed,
                                   bool break_scale) {
  std::vector<AuditRecord> records;
  HistogramSpec bins;
  for (MetricKind kind : {MetricKind::kVisits, MetricKind::kWorkplaces}) {
    for (int level = 0; level < kNumGranularityLevels; ++level) {
      NoiseSpec spec = noise_spec_for(kind, level);
      const double scale = break_scale ? spec.scale_b / 2.0 : spec.scale_b;
      // Worst-case neighbors: the cell's user present vs absent.
      Mechanism absent = [scale](Rng& rng) { return sample_laplace(scale, rng); };
      Mechanism present = [scale](Rng& rng) {
        return 1.0 + sample_laplace(scale, rng);
      };
      AuditRecord record;
      record.mechanism = to_string(kind);
      record.level = level;
      record.verdict = audit_mechanism(
          absent, present, spec.epsilon, trials, bins,
          derive_seed(seed, "mech|" + to_string(kind) + std::to_string(level)));
      records.push_back(std::move(record));
    }
  }
  return records;
}

void run_scale(const ScaleFileConfig& config) {
  MetricStore published = MetricStore::load(config.published_store_path);
  MetricStore recomputed = MetricStore::load(config.recomputed_store_path);
  std::vector<MetricGroup> groups = load_groups(config.groups_path);
  const ScalingDirection direction = config.scale_baseline
                                         ? ScalingDirection::kScaleBaseline
                                         : ScalingDirection::kScaleDaily;
  std::vector<ScalingFactor> factors;
  MetricStore scaled = recomputed;
  for (const MetricGroup& group : groups) {
    ScalingFactor factor = compute_scaling_factor(
        published, recomputed, group, config.budget_fraction, std::nullopt,
        config.root_seed, config.noise_enabled);
    if (factor.usable && !config.scaled_store_path.empty()) {
      scaled = apply_scaling_to_store(scaled, group, factor, direction);
    }
    factors.push_back(std::move(factor));
  }
  write_factor_ledger(factors, config.ledger_path);
  if (!config.scaled_store_path.empty()) {
    scaled.save(config.scaled_store_path);
  }
}

}  // namespace mobidp
