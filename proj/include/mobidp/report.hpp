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

#ifndef MOBIDP_REPORT_HPP_
#define MOBIDP_REPORT_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobidp/domain.hpp"
#include "mobidp/dp.hpp"
#include "mobidp/metrics.hpp"

namespace mobidp {

// Report generation parameters. Defaults are the published pipeline's
// constants; overridable for experiments.
struct ReportConfig {
  Date baseline_start = Date(2020, 1, 3);
  Date baseline_end = Date(2020, 2, 6);  // fixed 5-week window
  double coverage = 0.975;
  double ratio_threshold = 0.10;  // 10 absolute percentage points
  double min_area_km2 = 3.0;
  double min_noisy_users = 100.0;
};

// The 5 same-weekday days inside the fixed baseline window.
std::vector<Date> baseline_days_for(Date d, const ReportConfig& config);

double median(std::vector<double> values);

enum class SuppressionReason { kSmallArea, kLowUserCount, kUnreliable };
std::string to_string(SuppressionReason reason);

// Published percent change or an explicit suppression marker with reason.
struct ReportCell {
  bool published = false;
  int percent_change = 0;                // valid iff published
  SuppressionReason reason = SuppressionReason::kUnreliable;
};

// A post-DP cell value with the confidence interval derived from its noise
// spec. `noisy_users` is the DP user count used for the 100-user threshold.
struct CellValue {
  bool defined = false;  // false when the CI itself is undefined
  double value = 0.0;
  Interval ci;
  double noisy_users = 0.0;
};

// (m/b - 1) * 100 rounded to the nearest integer. Caller guarantees b > 0.
int percent_change(double metric, double baseline);

// Reliability filter: compare the CI corner ratios m_lo/b_hi and m_hi/b_lo
// against the DP ratio; either deviating by more than the threshold, or a
// baseline CI touching zero, suppresses the cell.
bool reliability_keep(const CellValue& metric, const CellValue& baseline,
                      double threshold);

// Area / user-count suppression. Thresholds are strict "smaller than":
// exactly 3.0 km2 and exactly 100.0 users are kept.
std::optional<SuppressionReason> suppress_small(double area_km2,
                                                double noisy_users,
                                                const ReportConfig& config);

// A reporting unit: one region, or several merged small regions.
struct ReportingUnit {
  std::string id;       // member ids joined with '+'
  std::string name;
  int level = 0;
  double area_km2 = 0.0;
  std::string country_code;
  std::string country_name;
  std::string parent_name;            // level-1 name for level-2 units
  std::vector<std::string> member_ids;
};

// Greedy largest-first merge of sub-threshold sibling regions until each
// merged unit clears the area threshold. Merging never crosses country
// boundaries except for the Vatican City and Italy. Unmergeable remainders
// come back as single-member units below the threshold (still suppressed).
std::vector<ReportingUnit> merge_small_regions(const RegionTree& regions,
                                               double min_area_km2);

struct SuppressionRecord {
  std::string unit_id;
  Date date;
  ReportColumn column = ReportColumn::kRetailAndRecreation;
  SuppressionReason reason = SuppressionReason::kUnreliable;
};

struct ReportRow {
  ReportingUnit unit;
  Date date;
  std::map<ReportColumn, ReportCell> cells;
};

struct Report {
  std::vector<ReportRow> rows;           // deterministic order
  std::vector<SuppressionRecord> suppressions;
};

// Post-processing only: consumes NoisyMetric values and noise specs from the
// store, never raw events. Throws std::runtime_error naming the first
// missing baseline cell if the store does not cover the baseline window.
Report generate_report(const MetricStore& store, const RegionTree& regions,
                       std::span<const Date> target_dates,
                       const ReportConfig& config);

// UTF-8 CSV with header; suppressed cells emit an empty field.
std::string report_to_csv(const Report& report);

void write_report(const Report& report, const std::string& csv_path,
                  const std::string& sidecar_path);

// Combined day-level cell for one reporting unit and published column
// (sum of noisy member/category values; conservative CI combination).
// Exposed for tests and the scaling module.
CellValue column_cell(const MetricStore& store, const ReportingUnit& unit,
                      ReportColumn column, Date date,
                      const ReportConfig& config);

// Baseline cell: per-coordinate median of the 5 same-weekday baseline-day
// cells (value and both CI endpoints).
CellValue baseline_cell(const MetricStore& store, const ReportingUnit& unit,
                        ReportColumn column, Date target_date,
                        const ReportConfig& config);

}  // namespace mobidp

#endif  // MOBIDP_REPORT_HPP_
