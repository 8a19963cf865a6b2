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

#include "mobidp/audit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace mobidp {

using nlohmann::json;

AuditVerdict audit_mechanism(const Mechanism& on_d1, const Mechanism& on_d2,
                             double claimed_epsilon, long trials,
                             const HistogramSpec& bins, std::uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (!(bins.bin_width > 0.0)) {
    throw std::invalid_argument("bin width must be positive");
  }

  Rng rng1(derive_seed(seed, "audit|d1"));
  Rng rng2(derive_seed(seed, "audit|d2"));
  std::map<long, std::pair<long, long>> histogram;  // bin index -> (c1, c2)
  const auto bin_of = [&](double x) {
    return static_cast<long>(std::floor(x / bins.bin_width));
  };
  for (long t = 0; t < trials; ++t) {
    histogram[bin_of(on_d1(rng1))].first += 1;
    histogram[bin_of(on_d2(rng2))].second += 1;
  }

  AuditVerdict verdict;
  verdict.claimed = claimed_epsilon;
  verdict.trials = trials;
  verdict.bin_width = bins.bin_width;
  if (histogram.size() <= 1) {
    verdict.inconclusive = true;
    return verdict;
  }

  // Max over well-populated bins of the smoothed log probability ratio.
  // Bins are ranked by ratio minus their own statistical slack, so a noisy
  // sparse bin cannot outrank a well-estimated violation.
  bool found = false;
  double best_score = 0.0;
  for (const auto& [bin, counts] : histogram) {
    const auto [c1, c2] = counts;
    if (std::min(c1, c2) < bins.min_bin_count) continue;
    const double ratio = std::abs(std::log((static_cast<double>(c1) + 1.0) /
                                           (static_cast<double>(c2) + 1.0)));
    // Four standard errors of the log ratio; wide enough that the max over
    // bins does not trip on sampling noise, narrow enough that a doubled
    // epsilon still fails at any practical trial count.
    const double slack = 4.0 * std::sqrt(1.0 / static_cast<double>(c1) +
                                         1.0 / static_cast<double>(c2));
    if (!found || ratio - slack > best_score) {
      found = true;
      best_score = ratio - slack;
      verdict.empirical_epsilon_lower_bound = ratio;
      verdict.slack = slack;
    }
  }
  if (!found) {
    verdict.inconclusive = true;
    return verdict;
  }
  verdict.pass =
      verdict.empirical_epsilon_lower_bound <= claimed_epsilon + verdict.slack;
  return verdict;
}

std::vector<BudgetEntry> audit_composition(const UserDaySchedule& schedule) {
  std::vector<BudgetEntry> ledger;
  for (int level = 0; level < kNumGranularityLevels; ++level) {
    const int pairs = schedule.capped_pairs_per_level[level];
    for (int i = 0; i < pairs; ++i) {
      ledger.push_back({MetricKind::kVisits, level,
                        noise_spec_for(MetricKind::kVisits, level).epsilon});
    }
    if (schedule.residential) {
      ledger.push_back(
          {MetricKind::kResidentialSum, level,
           noise_spec_for(MetricKind::kResidentialSum, level).epsilon});
      ledger.push_back(
          {MetricKind::kResidentialCount, level,
           noise_spec_for(MetricKind::kResidentialCount, level).epsilon});
    }
    if (schedule.workplaces) {
      ledger.push_back({MetricKind::kWorkplaces, level,
                        noise_spec_for(MetricKind::kWorkplaces, level).epsilon});
    }
  }
  return ledger;
}

void write_audit_report(const std::vector<AuditRecord>& records,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write audit report: " + path);
  for (const AuditRecord& r : records) {
    out << json{{"mechanism", r.mechanism},
                {"level", r.level},
                {"claimed_epsilon", r.verdict.claimed},
                {"empirical_bound", r.verdict.empirical_epsilon_lower_bound},
                {"trials", r.verdict.trials},
                {"slack", r.verdict.slack},
                {"inconclusive", r.verdict.inconclusive},
                {"pass", r.verdict.pass}}
               .dump()
        << "\n";
  }
}

}  // namespace mobidp
