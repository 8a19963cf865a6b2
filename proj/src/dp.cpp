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

#include "mobidp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mobidp/domain.hpp"

namespace mobidp {
namespace {

// Epsilon per granularity level. Visits and workplaces charge the whole
// level budget to one count; residential splits it evenly between the sum
// and the count mechanism.
constexpr double kLevelEpsilon[kNumGranularityLevels] = {0.11, 0.11, 0.22};

constexpr double kResidentialSumSensitivity = 12.0;
constexpr double kCountSensitivity = 1.0;

std::string family_of(MetricKind kind) {
  switch (kind) {
    case MetricKind::kVisits: return "visits";
    case MetricKind::kResidentialSum:
    case MetricKind::kResidentialCount: return "residential";
    case MetricKind::kWorkplaces: return "workplaces";
  }
  throw std::invalid_argument("unknown metric kind");
}

}  // namespace

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kVisits: return "visits";
    case MetricKind::kResidentialSum: return "residential_sum";
    case MetricKind::kResidentialCount: return "residential_count";
    case MetricKind::kWorkplaces: return "workplaces";
  }
  throw std::invalid_argument("unknown metric kind");
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "visits") return MetricKind::kVisits;
  if (name == "residential_sum") return MetricKind::kResidentialSum;
  if (name == "residential_count") return MetricKind::kResidentialCount;
  if (name == "workplaces") return MetricKind::kWorkplaces;
  throw std::invalid_argument("unknown metric kind: " + name);
}

double NoiseSpec::stddev() const { return scale_b * std::sqrt(2.0); }

NoiseSpec noise_spec_for(MetricKind kind, int level) {
  if (level < 0 || level >= kNumGranularityLevels) {
    throw std::out_of_range("granularity level out of range");
  }
  NoiseSpec spec;
  switch (kind) {
    case MetricKind::kVisits:
    case MetricKind::kWorkplaces:
      spec.sensitivity = kCountSensitivity;
      spec.epsilon = kLevelEpsilon[level];
      break;
    case MetricKind::kResidentialSum:
      spec.sensitivity = kResidentialSumSensitivity;
      spec.epsilon = kLevelEpsilon[level] / 2.0;
      break;
    case MetricKind::kResidentialCount:
      spec.sensitivity = kCountSensitivity;
      spec.epsilon = kLevelEpsilon[level] / 2.0;
      break;
  }
  spec.scale_b = spec.sensitivity / spec.epsilon;
  return spec;
}

double sample_laplace(double scale_b, Rng& rng) {
  if (!(scale_b > 0.0)) {
    throw std::invalid_argument("Laplace scale must be positive");
  }
  // Inverse CDF: u uniform in (-1/2, 1/2), x = -b * sgn(u) * ln(1 - 2|u|).
  double u;
  do {
    u = rng.uniform() - 0.5;
  } while (u == -0.5);
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale_b * sign * std::log(1.0 - 2.0 * std::abs(u));
}

double laplace_ci_half_width(double scale_b, double coverage) {
  // scale 0 is the zero-noise test mode: degenerate, zero-width interval.
  if (scale_b < 0.0) {
    throw std::invalid_argument("Laplace scale must be nonnegative");
  }
  if (!(coverage > 0.0) || !(coverage < 1.0)) {
    throw std::invalid_argument("coverage must be in (0, 1)");
  }
  return scale_b * std::log(1.0 / (1.0 - coverage));
}

Interval laplace_ci(double noisy_value, double scale_b, double coverage) {
  const double hw = laplace_ci_half_width(scale_b, coverage);
  return {noisy_value - hw, noisy_value + hw};
}

RatioCi residential_ratio_ci(Interval sum_ci, Interval count_ci) {
  RatioCi out;
  if (count_ci.lo <= 0.0) return out;  // division undefined within the CI
  // Sign-aware interval division; for a positive denominator the extremes
  // are attained at the corners.
  const double lo =
      sum_ci.lo >= 0.0 ? sum_ci.lo / count_ci.hi : sum_ci.lo / count_ci.lo;
  const double hi =
      sum_ci.hi >= 0.0 ? sum_ci.hi / count_ci.lo : sum_ci.hi / count_ci.hi;
  out.defined = true;
  out.interval = {std::clamp(lo + 12.0, 0.0, 24.0),
                  std::clamp(hi + 12.0, 0.0, 24.0)};
  return out;
}

BudgetReport budget_report(std::span<const BudgetEntry> entries) {
  // Aggregate as count * epsilon per distinct epsilon value. The table
  // epsilons are binary scalings of each other, so these products and their
  // sums are exact in doubles; naive accumulation is not.
  std::map<std::string, std::map<double, long>> counts;
  for (const BudgetEntry& e : entries) {
    counts[family_of(e.kind)][e.epsilon] += 1;
  }
  BudgetReport report;
  for (const auto& [family, by_epsilon] : counts) {
    double family_total = 0.0;
    for (const auto& [epsilon, count] : by_epsilon) {
      family_total += static_cast<double>(count) * epsilon;
    }
    report.per_family[family] = family_total;
    report.per_user_day_total += family_total;
  }
  return report;
}

std::vector<BudgetEntry> visit_pair_entries() {
  std::vector<BudgetEntry> entries;
  for (int level = 0; level < kNumGranularityLevels; ++level) {
    entries.push_back(
        {MetricKind::kVisits, level, noise_spec_for(MetricKind::kVisits, level).epsilon});
  }
  return entries;
}

std::vector<BudgetEntry> visit_day_entries(int capped_pairs) {
  std::vector<BudgetEntry> entries;
  for (int i = 0; i < capped_pairs; ++i) {
    auto pair = visit_pair_entries();
    entries.insert(entries.end(), pair.begin(), pair.end());
  }
  return entries;
}

std::vector<BudgetEntry> residential_user_entries() {
  std::vector<BudgetEntry> entries;
  for (int level = 0; level < kNumGranularityLevels; ++level) {
    entries.push_back({MetricKind::kResidentialSum, level,
                       noise_spec_for(MetricKind::kResidentialSum, level).epsilon});
    entries.push_back({MetricKind::kResidentialCount, level,
                       noise_spec_for(MetricKind::kResidentialCount, level).epsilon});
  }
  return entries;
}

std::vector<BudgetEntry> workplace_user_entries() {
  std::vector<BudgetEntry> entries;
  for (int level = 0; level < kNumGranularityLevels; ++level) {
    entries.push_back({MetricKind::kWorkplaces, level,
                       noise_spec_for(MetricKind::kWorkplaces, level).epsilon});
  }
  return entries;
}

}  // namespace mobidp
