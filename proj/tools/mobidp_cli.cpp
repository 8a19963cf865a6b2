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

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "mobidp/pipeline.hpp"

namespace {

// Exit codes: 0 success, 1 invalid input or configuration, 2 audit failure.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kAuditFailed = 2;

mobidp::Date parse_date_arg(const std::string& s, const char* flag) {
  try {
    return mobidp::Date::parse(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected YYYY-MM-DD, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private mobility metrics pipeline"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "Generate a synthetic event set from a scenario file");
  std::string scenario_path, generate_out;
  generate->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--out", generate_out, "Output directory")->required();

  // aggregate
  auto* aggregate = app.add_subcommand(
      "aggregate", "Compute noisy daily metrics over the fixed schema");
  std::string agg_regions, agg_events, agg_store;
  std::string agg_start, agg_end;
  std::uint64_t agg_seed = 0;
  bool agg_no_noise = false;
  int agg_cap = 4;
  aggregate->add_option("--regions", agg_regions, "Region tree JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  aggregate->add_option("--events", agg_events, "Event directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  aggregate->add_option("--out", agg_store, "Output metric store JSONL")
      ->required();
  aggregate->add_option("--start", agg_start, "First date (YYYY-MM-DD)")
      ->required();
  aggregate->add_option("--end", agg_end, "Last date (YYYY-MM-DD)")->required();
  aggregate->add_option("--seed", agg_seed, "Root seed for all noise draws");
  aggregate->add_option("--max-pairs", agg_cap,
                        "Per-user per-day contribution cap");
  aggregate->add_flag("--unsafe-disable-noise", agg_no_noise,
                      "Disable noise. Output is NOT private; testing only");

  // report
  auto* report = app.add_subcommand(
      "report", "Build the percent-change report from a metric store");
  std::string rep_regions, rep_store, rep_csv, rep_sidecar;
  std::string rep_start, rep_end;
  double rep_min_area = 3.0;
  double rep_min_users = 100.0;
  double rep_threshold = 0.10;
  report->add_option("--regions", rep_regions, "Region tree JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--store", rep_store, "Metric store JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--csv", rep_csv, "Output CSV path")->required();
  report->add_option("--sidecar", rep_sidecar, "Suppression sidecar JSONL")
      ->required();
  report->add_option("--start", rep_start, "First report date")->required();
  report->add_option("--end", rep_end, "Last report date")->required();
  report->add_option("--min-area", rep_min_area, "Region area floor in km^2");
  report->add_option("--min-users", rep_min_users, "Noisy user count floor");
  report->add_option("--ratio-threshold", rep_threshold,
                     "Reliability deviation threshold");

  // audit
  auto* audit = app.add_subcommand(
      "audit", "Empirically test the noise mechanisms against their budgets");
  long audit_trials = 1'000'000;
  std::uint64_t audit_seed = 0;
  bool audit_break = false;
  std::string audit_out;
  audit->add_option("--trials", audit_trials, "Trials per mechanism");
  audit->add_option("--seed", audit_seed, "Audit seed");
  audit->add_option("--out", audit_out, "Audit report JSONL");
  audit->add_flag("--inject-broken", audit_break,
                  "Halve the noise scale; the audit must then fail");

  // scale
  auto* scale = app.add_subcommand(
      "scale", "Compute and apply scaling factors across a logic change");
  std::string sc_published, sc_recomputed, sc_groups, sc_ledger, sc_scaled;
  double sc_fraction = 0.10;
  std::uint64_t sc_seed = 0;
  bool sc_no_noise = false;
  bool sc_baseline = false;
  scale->add_option("--published", sc_published, "Published store JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  scale
      ->add_option("--recomputed", sc_recomputed,
                   "Noiseless recomputed store JSONL (new logic)")
      ->required()
      ->check(CLI::ExistingFile);
  scale->add_option("--groups", sc_groups, "Metric group definitions JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  scale->add_option("--ledger", sc_ledger, "Output factor ledger JSONL")
      ->required();
  scale->add_option("--scaled-store", sc_scaled,
                    "Optional output store with factors applied");
  scale->add_option("--budget-fraction", sc_fraction,
                    "Fraction of the per-cell budget spent per factor");
  scale->add_option("--seed", sc_seed, "Root seed for factor noise");
  scale->add_flag("--scale-baseline", sc_baseline,
                  "Scale the baseline instead of the daily counts");
  scale->add_flag("--unsafe-disable-noise", sc_no_noise,
                  "Disable factor noise. NOT private; testing only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (generate->parsed()) {
      mobidp::run_generate(scenario_path, generate_out);
    } else if (aggregate->parsed()) {
      mobidp::AggregateConfig config;
      config.regions_path = agg_regions;
      config.events_dir = agg_events;
      config.store_path = agg_store;
      config.start_date = parse_date_arg(agg_start, "--start");
      config.end_date = parse_date_arg(agg_end, "--end");
      config.root_seed = agg_seed;
      config.noise_enabled = !agg_no_noise;
      config.cap.max_pairs = agg_cap;
      mobidp::run_aggregate(config);
    } else if (report->parsed()) {
      mobidp::ReportFileConfig config;
      config.regions_path = rep_regions;
      config.store_path = rep_store;
      config.csv_path = rep_csv;
      config.sidecar_path = rep_sidecar;
      config.start_date = parse_date_arg(rep_start, "--start");
      config.end_date = parse_date_arg(rep_end, "--end");
      config.report.min_area_km2 = rep_min_area;
      config.report.min_noisy_users = rep_min_users;
      config.report.ratio_threshold = rep_threshold;
      mobidp::run_report(config);
    } else if (audit->parsed()) {
      auto records = mobidp::run_audit(audit_trials, audit_seed, audit_break);
      if (!audit_out.empty()) mobidp::write_audit_report(records, audit_out);
      bool all_pass = true;
      for (const auto& r : records) {
        std::printf("%-12s level %d  claimed %.2f  empirical %.4f  %s\n",
                    r.mechanism.c_str(), r.level, r.verdict.claimed,
                    r.verdict.empirical_epsilon_lower_bound,
                    r.verdict.pass ? "pass" : "FAIL");
        all_pass = all_pass && r.verdict.pass;
      }
      if (!all_pass) return kAuditFailed;
    } else if (scale->parsed()) {
      mobidp::ScaleFileConfig config;
      config.published_store_path = sc_published;
      config.recomputed_store_path = sc_recomputed;
      config.groups_path = sc_groups;
      config.ledger_path = sc_ledger;
      config.scaled_store_path = sc_scaled;
      config.budget_fraction = sc_fraction;
      config.root_seed = sc_seed;
      config.noise_enabled = !sc_no_noise;
      config.scale_baseline = sc_baseline;
      mobidp::run_scale(config);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvalid;
  }
  return kOk;
}
