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

#include <doctest.h>

#include <cmath>
#include <functional>

#include "mobidp/report.hpp"
#include "mobidp/rng.hpp"
#include "test_util.hpp"

using namespace mobidp;

namespace {

// Synthetic store: per-cell raw values from `value_of`, noise scales from
// the standard tables (values themselves stay exact).
MetricStore make_store(
    const RegionTree& tree, const std::vector<Date>& dates,
    const std::function<double(const DailyMetricKey&, MetricKind)>& value_of) {
  MetricStore store;
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
      NoisyMetric m;
      m.kind = kind;
      m.noise = noise_spec_for(kind, tree.find(key.region_id)->level);
      m.value = value_of(key, kind);
      store.put(key, m);
    }
  }
  return store;
}

std::vector<Date> report_dates(const ReportConfig& config, Date target) {
  auto dates = date_range(config.baseline_start, config.baseline_end);
  dates.push_back(target);
  return dates;
}

const Date kTarget(2020, 3, 20);  // a Friday

// Baseline 1000 visits/workplaces per cell, target 800 (-20%); residential
// ratio 14h baseline, 13h target (-7%).
double healthy_values(const DailyMetricKey& key, MetricKind kind,
                      const ReportConfig& config) {
  const bool baseline = key.date <= config.baseline_end;
  switch (kind) {
    case MetricKind::kVisits:
    case MetricKind::kWorkplaces: return baseline ? 1000.0 : 800.0;
    case MetricKind::kResidentialSum: return baseline ? 20000.0 : 10000.0;
    case MetricKind::kResidentialCount: return 10000.0;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("baseline days for a Friday are the 5 Fridays Jan 3 .. Jan 31") {
  ReportConfig config;
  auto days = baseline_days_for(kTarget, config);
  REQUIRE(days.size() == 5);
  CHECK(days.front() == Date(2020, 1, 3));
  CHECK(days.back() == Date(2020, 1, 31));
  for (std::size_t i = 1; i < days.size(); ++i) {
    CHECK(days[i] - days[i - 1] == 7);
  }
}

TEST_CASE("every weekday has exactly 5 baseline days inside the fixed window") {
  ReportConfig config;
  for (int offset = 0; offset < 7; ++offset) {
    auto days = baseline_days_for(Date(2020, 3, 16) + offset, config);
    CHECK(days.size() == 5);
    for (Date d : days) {
      CHECK(d >= config.baseline_start);
      CHECK(d <= config.baseline_end);
      CHECK(d.weekday() == (Date(2020, 3, 16) + offset).weekday());
    }
  }
}

TEST_CASE("median") {
  CHECK(median({1, 2, 3, 4, 5}) == 3);
  CHECK(median({10, 10, 10, 10, 50}) == 10);  // robust to one outlier
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("percent change") {
  CHECK(percent_change(110, 100) == 10);
  CHECK(percent_change(100, 100) == 0);
  CHECK(percent_change(86.47, 133.53) == -35);
}

TEST_CASE("reliability filter: worked example at scale 9.09 suppresses") {
  const double hw = 9.09 * std::log(40.0);  // about 33.53
  CellValue m{true, 120.0, {120.0 - hw, 120.0 + hw}, 120.0};
  CellValue b{true, 100.0, {100.0 - hw, 100.0 + hw}, 100.0};
  // Corner ratios about 0.648 and 2.310 vs dp ratio 1.20.
  CHECK(m.ci.lo / b.ci.hi == doctest::Approx(0.648).epsilon(0.01));
  CHECK(m.ci.hi / b.ci.lo == doctest::Approx(2.310).epsilon(0.01));
  CHECK_FALSE(reliability_keep(m, b, 0.10));
}

TEST_CASE("reliability filter: large counts keep") {
  const double hw = 9.09 * std::log(40.0);
  CellValue m{true, 100000.0, {100000.0 - hw, 100000.0 + hw}, 100000.0};
  CellValue b = m;
  CHECK(reliability_keep(m, b, 0.10));
}

TEST_CASE("reliability filter: zero-width CIs keep, nonpositive baseline suppresses") {
  CellValue m{true, 50.0, {50.0, 50.0}, 50.0};
  CellValue b{true, 50.0, {50.0, 50.0}, 50.0};
  CHECK(reliability_keep(m, b, 0.10));

  CellValue bad{true, -3.0, {-40.0, 30.0}, -3.0};
  CHECK_FALSE(reliability_keep(m, bad, 0.10));
  CellValue touching{true, 10.0, {-1.0, 21.0}, 10.0};
  CHECK_FALSE(reliability_keep(m, touching, 0.10));
}

TEST_CASE("suppression thresholds are strict smaller-than") {
  ReportConfig config;
  CHECK(suppress_small(2.9, 5000, config) == SuppressionReason::kSmallArea);
  CHECK(suppress_small(100, 99.4, config) == SuppressionReason::kLowUserCount);
  CHECK(suppress_small(3.0, 100.0, config) == std::nullopt);
}

TEST_CASE("greedy merge of small sibling regions") {
  std::vector<RegionNode> regions = {
      {"C", "Country", 0, "", 1000.0, "XX"},
      {"C-S", "State", 1, "C", 500.0, "XX"},
      {"C-S-a", "A", 2, "C-S", 1.0, "XX"},
      {"C-S-b", "B", 2, "C-S", 1.0, "XX"},
      {"C-S-c", "C", 2, "C-S", 1.5, "XX"},
  };
  auto units = merge_small_regions(RegionTree(regions), 3.0);
  // Country, state, and one merged 3.5 km2 unit.
  REQUIRE(units.size() == 3);
  const ReportingUnit* merged = nullptr;
  for (const auto& u : units) {
    if (u.member_ids.size() == 3) merged = &u;
  }
  REQUIRE(merged != nullptr);
  CHECK(merged->area_km2 == doctest::Approx(3.5));
  CHECK(merged->level == 2);
}

TEST_CASE("a small region with no small sibling remains below threshold") {
  std::vector<RegionNode> regions = {
      {"C", "Country", 0, "", 1000.0, "XX"},
      {"C-S", "State", 1, "C", 500.0, "XX"},
      {"C-S-a", "A", 2, "C-S", 2.0, "XX"},
      {"C-S-b", "B", 2, "C-S", 400.0, "XX"},
  };
  auto units = merge_small_regions(RegionTree(regions), 3.0);
  bool found_small = false;
  for (const auto& u : units) {
    if (u.id == "C-S-a") {
      found_small = true;
      CHECK(u.area_km2 < 3.0);  // stays suppressed downstream
    }
  }
  CHECK(found_small);
}

TEST_CASE("Vatican City may merge with Italy across the country boundary") {
  std::vector<RegionNode> regions = {
      {"IT", "Italy", 0, "", 302000.0, "IT"},
      {"VA", "Vatican City", 0, "", 0.44, "VA"},
      {"FR", "France", 0, "", 551000.0, "FR"},
  };
  auto units = merge_small_regions(RegionTree(regions), 3.0);
  REQUIRE(units.size() == 2);  // FR alone, IT+VA merged
  const ReportingUnit* merged = nullptr;
  for (const auto& u : units) {
    if (u.member_ids.size() == 2) merged = &u;
  }
  REQUIRE(merged != nullptr);
  CHECK(merged->id == "IT+VA");
}

TEST_CASE("other small countries never merge across the boundary") {
  std::vector<RegionNode> regions = {
      {"IT", "Italy", 0, "", 302000.0, "IT"},
      {"MC", "Monaco", 0, "", 2.0, "MC"},
  };
  auto units = merge_small_regions(RegionTree(regions), 3.0);
  REQUIRE(units.size() == 2);
  for (const auto& u : units) CHECK(u.member_ids.size() == 1);
}

TEST_CASE("combined visit column sums constituents with conservative CI") {
  RegionTree tree(testing::toy_regions());
  ReportConfig config;
  std::vector<Date> dates = {kTarget};
  MetricStore store = make_store(tree, dates, [](const DailyMetricKey& key,
                                                 MetricKind) {
    if (key.family != MetricFamily::kVisits) return 0.0;
    if (key.category == PlaceCategory::kRetail) return 50.0;
    if (key.category == PlaceCategory::kRecreation) return 30.0;
    if (key.category == PlaceCategory::kEateries) return 20.0;
    return 0.0;
  });
  ReportingUnit unit{"US", "United States", 0, 9.8e6, "US", "United States", "", {"US"}};
  CellValue cell = column_cell(store, unit, ReportColumn::kRetailAndRecreation,
                               kTarget, config);
  CHECK(cell.value == 100.0);
  // Conservative CI: sum of the three half-widths, 3 x 33.53 at level 0.
  const double combined_hw = (cell.ci.hi - cell.ci.lo) / 2.0;
  CHECK(combined_hw ==
        doctest::Approx(3 * (1.0 / 0.11) * std::log(40.0)).epsilon(1e-6));

  // Monte Carlo oracle: the true 97.5% half-width of the sum of three
  // independent Laplace(9.09) draws is below the conservative one.
  Rng rng(314);
  const int trials = 200'000;
  int inside = 0;
  for (int t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += sample_laplace(9.09, rng);
    if (std::abs(sum) <= combined_hw) ++inside;
  }
  CHECK(static_cast<double>(inside) / trials >= 0.975);
}

TEST_CASE("report on a healthy store publishes the expected percent changes") {
  RegionTree tree(testing::toy_regions());
  ReportConfig config;
  auto dates = report_dates(config, kTarget);
  MetricStore store =
      make_store(tree, dates, [&](const DailyMetricKey& key, MetricKind kind) {
        return healthy_values(key, kind, config);
      });
  Report report = generate_report(store, tree, {{kTarget}}, config);
  REQUIRE(report.rows.size() == 7);  // one row per region for the one date
  CHECK(report.suppressions.empty());
  for (const ReportRow& row : report.rows) {
    CHECK(row.cells.at(ReportColumn::kRetailAndRecreation).percent_change == -20);
    CHECK(row.cells.at(ReportColumn::kGroceryAndPharmacy).percent_change == -20);
    CHECK(row.cells.at(ReportColumn::kParks).percent_change == -20);
    CHECK(row.cells.at(ReportColumn::kTransitStations).percent_change == -20);
    CHECK(row.cells.at(ReportColumn::kWorkplaces).percent_change == -20);
    // 13h vs 14h baseline.
    CHECK(row.cells.at(ReportColumn::kResidential).percent_change == -7);
  }
}

TEST_CASE("low-user-count cells are suppressed and emit empty CSV fields") {
  RegionTree tree(testing::toy_regions());
  ReportConfig config;
  auto dates = report_dates(config, kTarget);
  MetricStore store =
      make_store(tree, dates, [&](const DailyMetricKey& key, MetricKind kind) {
        if (key.category == PlaceCategory::kParks) return 15.0;  // sparse
        return healthy_values(key, kind, config);
      });
  Report report = generate_report(store, tree, {{kTarget}}, config);
  for (const ReportRow& row : report.rows) {
    const ReportCell& parks = row.cells.at(ReportColumn::kParks);
    CHECK_FALSE(parks.published);
    CHECK(parks.reason == SuppressionReason::kLowUserCount);
    CHECK(row.cells.at(ReportColumn::kWorkplaces).published);
  }
  CHECK(report.suppressions.size() == 7);

  const std::string csv = report_to_csv(report);
  // The parks column (8th field) is empty on every data row.
  std::size_t line_start = csv.find('\n') + 1;
  while (line_start < csv.size()) {
    std::size_t line_end = csv.find('\n', line_start);
    std::string line = csv.substr(line_start, line_end - line_start);
    int commas = 0;
    std::size_t pos = 0;
    for (; pos < line.size() && commas < 7; ++pos) {
      if (line[pos] == ',') ++commas;
    }
    CHECK(line[pos] == ',');  // empty parks field
    line_start = line_end + 1;
  }
}

TEST_CASE("report generation is deterministic") {
  RegionTree tree(testing::toy_regions());
  ReportConfig config;
  auto dates = report_dates(config, kTarget);
  MetricStore store =
      make_store(tree, dates, [&](const DailyMetricKey& key, MetricKind kind) {
        return healthy_values(key, kind, config);
      });
  Report a = generate_report(store, tree, {{kTarget}}, config);
  Report b = generate_report(store, tree, {{kTarget}}, config);
  CHECK(report_to_csv(a) == report_to_csv(b));
}

TEST_CASE("missing baseline day is reported by name") {
  RegionTree tree(testing::toy_regions());
  ReportConfig config;
  // Store covers only the target date.
  MetricStore store =
      make_store(tree, {kTarget}, [](const DailyMetricKey&, MetricKind) {
        return 1000.0;
      });
  CHECK_THROWS_WITH_AS(generate_report(store, tree, {{kTarget}}, config),
                       doctest::Contains("2020-01-03"),
                       std::runtime_error);
}
