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

#ifndef MOBIDP_AUDIT_HPP_
#define MOBIDP_AUDIT_HPP_

#include <functional>
#include <string>
#include <vector>

#include "mobidp/domain.hpp"
#include "mobidp/dp.hpp"

namespace mobidp {

// Black-box randomized mechanism producing one scalar output per run.
using Mechanism = std::function<double(Rng&)>;

// Histogram spec for the output comparison.
struct HistogramSpec {
  double bin_width = 0.5;
  // Bins with fewer samples than this on either side are too noisy to
  // contribute to the epsilon estimate.
  long min_bin_count = 50;
};

struct AuditVerdict {
  double empirical_epsilon_lower_bound = 0.0;
  double claimed = 0.0;
  long trials = 0;
  double bin_width = 0.0;
  double slack = 0.0;  // 4 standard errors of the maximizing bin's log ratio
  bool inconclusive = false;
  bool pass = false;
};

// Empirical epsilon test: runs the mechanism `trials` times on each of two
// neighboring datasets (D2 = D1 plus-or-minus one user's single-day data),
// histograms the outputs, and takes the max over well-populated bins of
// |log((c1+1)/(c2+1))|. Passes iff the bound is at most claimed + slack.
// The audit sees only mechanism outputs, never internals.
AuditVerdict audit_mechanism(const Mechanism& on_d1, const Mechanism& on_d2,
                             double claimed_epsilon, long trials,
                             const HistogramSpec& bins, std::uint64_t seed);

// One user's single-day footprint across the pipeline, for composition
// accounting: retained visit pairs per granularity level, plus residential
// and workplace participation.
struct UserDaySchedule {
  int capped_pairs_per_level[kNumGranularityLevels] = {0, 0, 0};
  bool residential = false;
  bool workplaces = false;
};

// Ledger of per-mechanism epsilon consumed by the user's day. Totals equal
// budget_report of the same composition.
std::vector<BudgetEntry> audit_composition(const UserDaySchedule& schedule);

struct AuditRecord {
  std::string mechanism;
  int level = 0;
  AuditVerdict verdict;
};

// Line-delimited JSON audit report.
void write_audit_report(const std::vector<AuditRecord>& records,
                        const std::string& path);

}  // namespace mobidp

#endif  // MOBIDP_AUDIT_HPP_
