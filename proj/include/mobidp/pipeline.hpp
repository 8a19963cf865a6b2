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

#ifndef MOBIDP_PIPELINE_HPP_
#define MOBIDP_PIPELINE_HPP_

#include <string>
#include <vector>

#include "mobidp/audit.hpp"
#include "mobidp/report.hpp"
#include "mobidp/scaling.hpp"
#include "mobidp/synth.hpp"

namespace mobidp {

// File-level pipeline commands shared by the CLI and the python bindings.

// Writes regions.jsonl, visits/residential/workplaces.jsonl and the
// ground-truth store (truth_store.jsonl) under out_dir.
void run_generate(const std::string& scenario_path, const std::string& out_dir);

struct AggregateConfig {
  std::string regions_path;
  std::string events_dir;
  std::string store_path;
  Date start_date;
  Date end_date;
  std::uint64_t root_seed = 0;
  bool noise_enabled = true;  // unsafe test mode when false
  ContributionCap cap;
};
void run_aggregate(const AggregateConfig& config);

struct ReportFileConfig {
  std::string regions_path;
  std::string store_path;
  std::string csv_path;
  std::string sidecar_path;
  Date start_date;
  Date end_date;
  ReportConfig report;
};
void run_report(const ReportFileConfig& config);

// Standard audit set: visits and workplaces counts at each level on
// worst-case neighbors (a user present or absent in one cell). With
// break_scale set, the injected mechanism halves the noise scale and must
// fail. Returns the records; overall pass iff every verdict passes.
std::vector<AuditRecord> run_audit(long trials, std::uint64_t seed,
                                   bool break_scale = false);

struct ScaleFileConfig {
  std::string published_store_path;
  std::string recomputed_store_path;  // noiseless recomputation, new logic
  std::string groups_path;
  std::string ledger_path;
  std::string scaled_store_path;  // optional output; empty to skip
  double budget_fraction = 0.10;
  std::uint64_t root_seed = 0;
  bool noise_enabled = true;
  bool scale_baseline = false;  // default scales the daily counts
};
void run_scale(const ScaleFileConfig& config);

}  // namespace mobidp

#endif  // MOBIDP_PIPELINE_HPP_
