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

#ifndef MOBIDP_DP_HPP_
#define MOBIDP_DP_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mobidp/rng.hpp"

namespace mobidp {

// The four Laplace mechanisms the pipeline runs.
enum class MetricKind {
  kVisits,
  kResidentialSum,
  kResidentialCount,
  kWorkplaces,
};

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

// Laplace noise parameters for one mechanism at one granularity level.
// Invariant: scale_b == sensitivity / epsilon.
struct NoiseSpec {
  double scale_b = 0.0;
  double epsilon = 0.0;
  double sensitivity = 0.0;

  double stddev() const;  // scale_b * sqrt(2)
};

// A DP-protected scalar plus the noise scale used to produce it. The noise
// spec travels with the value so downstream CI computation never re-touches
// raw data.
struct NoisyMetric {
  double value = 0.0;
  NoiseSpec noise;
  MetricKind kind = MetricKind::kVisits;
};

// Per-mechanism noise parameters, by metric kind and granularity level.
// Count mechanisms have sensitivity 1; the residential sum has sensitivity 12
// (per-user values offset by 12 lie in [-12, 12], and neighboring datasets
// differ by adding or removing one user's day).
// Throws std::out_of_range for an unknown kind/level.
NoiseSpec noise_spec_for(MetricKind kind, int level);

// One draw from Laplace(0, scale_b) via the inverse-CDF transform.
// Deterministic given the rng state. Throws std::invalid_argument if
// scale_b <= 0.
double sample_laplace(double scale_b, Rng& rng);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const { return (hi - lo) / 2.0; }
};

// Half-width of the symmetric Laplace confidence interval:
// scale_b * ln(1 / (1 - coverage)). At coverage 0.975 this is b*ln(40),
// leaving tail mass below 2.5% in each direction.
double laplace_ci_half_width(double scale_b, double coverage);

// Symmetric interval noisy_value +/- half-width.
Interval laplace_ci(double noisy_value, double scale_b, double coverage);

// Interval-arithmetic ratio for the residential bounded mean: bounds on
// clamp(sum/count + offset, 0, 24) given CIs for the noisy sum and count.
// A count interval touching zero makes the ratio undefined; `defined` is
// false in that case.
struct RatioCi {
  bool defined = false;
  Interval interval;
};
RatioCi residential_ratio_ci(Interval sum_ci, Interval count_ci);

// Budget accounting. Residential sum and count entries both charge the
// "residential" family.
struct BudgetEntry {
  MetricKind kind = MetricKind::kVisits;
  int level = 0;
  double epsilon = 0.0;
};

struct BudgetReport {
  std::map<std::string, double> per_family;  // visits / residential / workplaces
  double per_user_day_total = 0.0;
};

BudgetReport budget_report(std::span<const BudgetEntry> entries);

// Entry builders for the standard compositions.
std::vector<BudgetEntry> visit_pair_entries();       // one pair, all 3 levels
std::vector<BudgetEntry> visit_day_entries(int capped_pairs);
std::vector<BudgetEntry> residential_user_entries();  // sum+count, all levels
std::vector<BudgetEntry> workplace_user_entries();

}  // namespace mobidp

#endif  // MOBIDP_DP_HPP_
