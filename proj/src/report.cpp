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

#include "mobidp/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mobidp {

using nlohmann::json;

std::vector<Date> baseline_days_for(Date d, const ReportConfig& config) {
  std::vector<Date> days;
  for (Date b = config.baseline_start; b <= config.baseline_end; b = b + 1) {
    if (b.weekday() == d.weekday()) days.push_back(b);
  }
  return days;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string to_string(SuppressionReason reason) {
  switch (reason) {
    case SuppressionReason::kSmallArea: return "small_area";
    case SuppressionReason::kLowUserCount: return "low_user_count";
    case SuppressionReason::kUnreliable: return "unreliable";
  }
  throw std::invalid_argument("unknown suppression reason");
}

int percent_change(double metric, double baseline) {
  return static_cast<int>(std::lround((metric / baseline - 1.0) * 100.0));
}

bool reliability_keep(const CellValue& metric, const CellValue& baseline,
                      double threshold) {
  if (!metric.defined || !baseline.defined) return false;
  if (baseline.value <= 0.0 || baseline.ci.lo <= 0.0) return false;
  const double dp_ratio = metric.value / baseline.value;
  const double lo_ratio = metric.ci.lo / baseline.ci.hi;
  const double hi_ratio = metric.ci.hi / baseline.ci.lo;
  return std::abs(lo_ratio - dp_ratio) <= threshold &&
         std::abs(hi_ratio - dp_ratio) <= threshold;
}

std::optional<SuppressionReason> suppress_small(double area_km2,
                                                double noisy_users,
                                                const ReportConfig& config) {
  if (area_km2 < config.min_area_km2) return SuppressionReason::kSmallArea;
  if (noisy_users < config.min_noisy_users) {
    return SuppressionReason::kLowUserCount;
  }
  return std::nullopt;
}

namespace {

bool can_merge(const RegionNode& a, const RegionNode& b) {
  if (a.level != b.level) return false;
  if (a.country_code == b.country_code) return a.parent_id == b.parent_id;
  // Cross-country merging is allowed only for the Vatican City and Italy.
  const auto codes = std::minmax(a.country_code, b.country_code);
  return codes.first == "IT" && codes.second == "VA";
}

ReportingUnit unit_for(const RegionTree& regions,
                       std::vector<const RegionNode*> members) {
  std::sort(members.begin(), members.end(),
            [](const RegionNode* a, const RegionNode* b) { return a->id < b->id; });
  ReportingUnit unit;
  for (const RegionNode* m : members) {
    if (!unit.id.empty()) {
      unit.id += "+";
      unit.name += "+";
    }
    unit.id += m->id;
    unit.name += m->name;
    unit.area_km2 += m->area_km2;
    unit.member_ids.push_back(m->id);
  }
  const RegionNode* head = members.front();
  unit.level = head->level;
  unit.country_code = head->country_code;
  // Display names from the ancestor chain of the first member.
  if (head->level == 0) {
    unit.country_name = unit.name;
  } else if (head->level == 1) {
    unit.country_name = regions.find(head->parent_id)->name;
  } else {
    const RegionNode* parent = regions.find(head->parent_id);
    unit.parent_name = parent->name;
    unit.country_name = regions.find(parent->parent_id)->name;
  }
  return unit;
}

}  // namespace

std::vector<ReportingUnit> merge_small_regions(const RegionTree& regions,
                                               double min_area_km2) {
  std::vector<ReportingUnit> units;
  std::vector<const RegionNode*> small;
  for (const RegionNode& r : regions.all()) {
    if (r.area_km2 < min_area_km2) {
      small.push_back(&r);
    } else {
      units.push_back(unit_for(regions, {&r}));
    }
  }
  // Largest first, so each merged unit clears the threshold with as few
  // members as possible.
  std::sort(small.begin(), small.end(),
            [](const RegionNode* a, const RegionNode* b) {
              if (a->area_km2 != b->area_km2) return a->area_km2 > b->area_km2;
              return a->id < b->id;
            });
  std::vector<bool> used(small.size(), false);
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (used[i]) continue;
    std::vector<const RegionNode*> members = {small[i]};
    double area = small[i]->area_km2;
    used[i] = true;
    for (std::size_t j = i + 1; j < small.size() && area < min_area_km2; ++j) {
      if (used[j] || !can_merge(*small[i], *small[j])) continue;
      members.push_back(small[j]);
      area += small[j]->area_km2;
      used[j] = true;
    }
    if (area < min_area_km2 && small[i]->country_code == "VA") {
      // Vatican exception: may merge into a large Italian partner.
      const RegionNode* partner = nullptr;
      for (const RegionNode& r : regions.all()) {
        if (r.country_code == "IT" && r.level == small[i]->level &&
            r.area_km2 >= min_area_km2 &&
            (partner == nullptr || r.area_km2 > partner->area_km2)) {
          partner = &r;
        }
      }
      if (partner != nullptr) {
        // Fold into the partner's unit.
        auto it = std::find_if(units.begin(), units.end(),
                               [&](const ReportingUnit& u) {
                                 return u.member_ids.size() == 1 &&
                                        u.member_ids[0] == partner->id;
                               });
        if (it != units.end()) units.erase(it);
        members.push_back(partner);
        units.push_back(unit_for(regions, std::move(members)));
        continue;
      }
    }
    if (area < min_area_km2 && members.size() > 1) {
      // Merged total still under the threshold: keep members separate,
      // each stays suppressed on its own.
      for (const RegionNode* m : members) {
        units.push_back(unit_for(regions, {m}));
      }
      continue;
    }
    units.push_back(unit_for(regions, std::move(members)));
  }
  std::sort(units.begin(), units.end(),
            [](const ReportingUnit& a, const ReportingUnit& b) {
              return std::tie(a.country_code, a.level, a.id) <
                     std::tie(b.country_code, b.level, b.id);
            });
  return units;
}

namespace {

const NoisyMetric& require(const MetricStore& store, const DailyMetricKey& key,
                           MetricKind kind) {
  const NoisyMetric* metric = store.get(key, kind);
  if (metric == nullptr) {
    throw std::runtime_error("metric store is missing cell " +
                             key.scope_string() + " (" + to_string(kind) + ")");
  }
  return *metric;
}

}  // namespace

CellValue column_cell(const MetricStore& store, const ReportingUnit& unit,
                      ReportColumn column, Date date,
                      const ReportConfig& config) {
  CellValue cell;
  if (column == ReportColumn::kResidential) {
    double sum = 0.0, count = 0.0, sum_scale = 0.0, count_scale = 0.0;
    for (const std::string& region : unit.member_ids) {
      DailyMetricKey key{region, date, MetricFamily::kResidential, std::nullopt};
      const NoisyMetric& s = require(store, key, MetricKind::kResidentialSum);
      const NoisyMetric& c = require(store, key, MetricKind::kResidentialCount);
      sum += s.value;
      count += c.value;
      sum_scale += s.noise.scale_b;
      count_scale += c.noise.scale_b;
    }
    cell.value = residential_ratio(sum, count);
    cell.noisy_users = count;
    const double sum_hw = sum_scale > 0.0
                              ? laplace_ci_half_width(sum_scale, config.coverage)
                              : 0.0;
    const double count_hw =
        count_scale > 0.0 ? laplace_ci_half_width(count_scale, config.coverage)
                          : 0.0;
    RatioCi ratio_ci = residential_ratio_ci({sum - sum_hw, sum + sum_hw},
                                            {count - count_hw, count + count_hw});
    cell.defined = ratio_ci.defined;
    cell.ci = ratio_ci.interval;
    return cell;
  }

  // Count columns: sum of noisy constituent values; the combined CI
  // half-width is the sum of the constituents' half-widths (independent
  // Laplace variables, conservative).
  double value = 0.0;
  double scale = 0.0;
  for (const std::string& region : unit.member_ids) {
    if (column == ReportColumn::kWorkplaces) {
      DailyMetricKey key{region, date, MetricFamily::kWorkplaces, std::nullopt};
      const NoisyMetric& m = require(store, key, MetricKind::kWorkplaces);
      value += m.value;
      scale += m.noise.scale_b;
    } else {
      for (PlaceCategory category : categories_of_column(column)) {
        DailyMetricKey key{region, date, MetricFamily::kVisits, category};
        const NoisyMetric& m = require(store, key, MetricKind::kVisits);
        value += m.value;
        scale += m.noise.scale_b;
      }
    }
  }
  cell.defined = true;
  cell.value = value;
  cell.noisy_users = value;
  const double hw =
      scale > 0.0 ? laplace_ci_half_width(scale, config.coverage) : 0.0;
  cell.ci = {value - hw, value + hw};
  return cell;
}

CellValue baseline_cell(const MetricStore& store, const ReportingUnit& unit,
                        ReportColumn column, Date target_date,
                        const ReportConfig& config) {
  std::vector<double> values, los, his;
  bool all_defined = true;
  for (Date day : baseline_days_for(target_date, config)) {
    CellValue day_cell = column_cell(store, unit, column, day, config);
    all_defined = all_defined && day_cell.defined;
    values.push_back(day_cell.value);
    los.push_back(day_cell.ci.lo);
    his.push_back(day_cell.ci.hi);
  }
  CellValue cell;
  cell.defined = all_defined;
  cell.value = median(values);
  // Per-coordinate medians: if each day value sits inside its own interval,
  // the median sits inside [median of lows, median of highs].
  cell.ci = {median(los), median(his)};
  return cell;
}

Report generate_report(const MetricStore& store, const RegionTree& regions,
                       std::span<const Date> target_dates,
                       const ReportConfig& config) {
  // Baseline coverage check up front, naming the first missing day.
  for (Date day = config.baseline_start; day <= config.baseline_end;
       day = day + 1) {
    DailyMetricKey probe{regions.all().front().id, day,
                         MetricFamily::kResidential, std::nullopt};
    if (!store.contains(probe)) {
      throw std::runtime_error("metric store is missing baseline day " +
                               day.to_string());
    }
  }

  std::vector<ReportingUnit> units =
      merge_small_regions(regions, config.min_area_km2);

  Report report;
  for (const ReportingUnit& unit : units) {
    for (Date date : target_dates) {
      ReportRow row;
      row.unit = unit;
      row.date = date;
      for (ReportColumn column : kAllColumns) {
        ReportCell out;
        const CellValue m = column_cell(store, unit, column, date, config);
        const auto small = suppress_small(unit.area_km2, m.noisy_users, config);
        if (small) {
          out.published = false;
          out.reason = *small;
        } else {
          const CellValue b = baseline_cell(store, unit, column, date, config);
          if (!reliability_keep(m, b, config.ratio_threshold)) {
            out.published = false;
            out.reason = SuppressionReason::kUnreliable;
          } else {
            out.published = true;
            out.percent_change = percent_change(m.value, b.value);
          }
        }
        if (!out.published) {
          report.suppressions.push_back({unit.id, date, column, out.reason});
        }
        row.cells[column] = out;
      }
      report.rows.push_back(std::move(row));
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return std::tie(a.unit.country_code, a.unit.country_name,
                              a.unit.parent_name, a.unit.level, a.unit.name,
                              a.date) < std::tie(b.unit.country_code,
                                                 b.unit.country_name,
                                                 b.unit.parent_name,
                                                 b.unit.level, b.unit.name,
                                                 b.date);
            });
  return report;
}

std::string report_to_csv(const Report& report) {
  std::string csv =
      "country_region_code,country_region,sub_region_1,sub_region_2,date,"
      "retail_and_recreation_percent_change_from_baseline,"
      "grocery_and_pharmacy_percent_change_from_baseline,"
      "parks_percent_change_from_baseline,"
      "transit_stations_percent_change_from_baseline,"
      "workplaces_percent_change_from_baseline,"
      "residential_percent_change_from_baseline\n";
  for (const ReportRow& row : report.rows) {
    const ReportingUnit& u = row.unit;
    csv += u.country_code + "," + u.country_name + ",";
    csv += (u.level >= 1 ? (u.level == 1 ? u.name : u.parent_name) : "");
    csv += ",";
    csv += (u.level == 2 ? u.name : "");
    csv += "," + row.date.to_string();
    for (ReportColumn column : kAllColumns) {
      const ReportCell& cell = row.cells.at(column);
      csv += ",";
      if (cell.published) csv += std::to_string(cell.percent_change);
    }
    csv += "\n";
  }
  return csv;
}

void write_report(const Report& report, const std::string& csv_path,
                  const std::string& sidecar_path) {
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + csv_path);
    out << report_to_csv(report);
  }
  std::ofstream out(sidecar_path);
  if (!out) throw std::runtime_error("cannot write sidecar: " + sidecar_path);
  for (const SuppressionRecord& rec : report.suppressions) {
    out << json{{"unit", rec.unit_id},
                {"date", rec.date.to_string()},
                {"column", to_string(rec.column)},
                {"reason", to_string(rec.reason)}}
               .dump()
        << "\n";
  }
}

}  // namespace mobidp
