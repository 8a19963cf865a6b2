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

#include "mobidp/audit.hpp"
#include "mobidp/pipeline.hpp"

using namespace mobidp;

namespace {

Mechanism count_mechanism(double raw, double scale) {
  return [raw, scale](Rng& rng) { return raw + sample_laplace(scale, rng); };
}

}  // namespace

TEST_CASE("audit of the level-2 visits mechanism on worst-case neighbors") {
  // The mechanism is exactly Laplace; the analytic log-ratio bound is
  // sensitivity/scale = 0.22.
  const double scale = noise_spec_for(MetricKind::kVisits, 2).scale_b;
  AuditVerdict verdict =
      audit_mechanism(count_mechanism(0.0, scale), count_mechanism(1.0, scale),
                      0.22, 1'000'000, HistogramSpec{}, 99);
  CHECK_FALSE(verdict.inconclusive);
  CHECK(verdict.pass);
  CHECK(verdict.empirical_epsilon_lower_bound <= 0.22 + verdict.slack);
  CHECK(verdict.empirical_epsilon_lower_bound >= 0.22 - 0.03);
}

TEST_CASE("identical datasets give an empirical bound near zero") {
  const double scale = noise_spec_for(MetricKind::kVisits, 0).scale_b;
  AuditVerdict verdict =
      audit_mechanism(count_mechanism(5.0, scale), count_mechanism(5.0, scale),
                      0.11, 200'000, HistogramSpec{}, 7);
  CHECK(verdict.pass);
  CHECK(verdict.empirical_epsilon_lower_bound < 0.05);
}

TEST_CASE("a mechanism with halved noise scale fails the audit") {
  // Halving the scale doubles the true log-ratio to about 0.44.
  const double scale = noise_spec_for(MetricKind::kVisits, 2).scale_b / 2.0;
  AuditVerdict verdict =
      audit_mechanism(count_mechanism(0.0, scale), count_mechanism(1.0, scale),
                      0.22, 1'000'000, HistogramSpec{}, 13);
  CHECK_FALSE(verdict.pass);
  CHECK(verdict.empirical_epsilon_lower_bound > 0.35);
}

TEST_CASE("degenerate histogram is inconclusive") {
  Mechanism constant = [](Rng&) { return 1.0; };
  AuditVerdict verdict = audit_mechanism(constant, constant, 0.1, 1000,
                                         HistogramSpec{}, 3);
  CHECK(verdict.inconclusive);
  CHECK_FALSE(verdict.pass);
}

TEST_CASE("composition ledger totals match the budget report") {
  UserDaySchedule four_pairs;
  four_pairs.capped_pairs_per_level[0] = 4;
  four_pairs.capped_pairs_per_level[1] = 4;
  four_pairs.capped_pairs_per_level[2] = 4;
  auto ledger = audit_composition(four_pairs);
  CHECK(budget_report(ledger).per_user_day_total == 1.76);

  UserDaySchedule residential_only;
  residential_only.residential = true;
  CHECK(budget_report(audit_composition(residential_only)).per_user_day_total ==
        0.44);

  UserDaySchedule idle;
  CHECK(budget_report(audit_composition(idle)).per_user_day_total == 0.0);
}

TEST_CASE("standard audit set passes and the broken injection fails") {
  auto records = run_audit(150'000, 42);
  REQUIRE(records.size() == 6);  // visits + workplaces at 3 levels
  for (const auto& r : records) {
    CHECK(r.verdict.pass);
  }
  auto broken = run_audit(150'000, 42, /*break_scale=*/true);
  int failures = 0;
  for (const auto& r : broken) {
    if (!r.verdict.pass) ++failures;
  }
  CHECK(failures == 6);
}

TEST_CASE("full visits pipeline audit respects the day-level 1.76 bound") {
  // Black-box mechanism: the sum of all level outputs for a user
  // contributing 14 pairs, capped to 4 per level. Output is the vector of
  // noisy cell values collapsed to a scalar via a fixed linear probe; any
  // post-processing of a DP output stays within the budget.
  auto day_total = [](bool with_user) {
    return [with_user](Rng& rng) {
      double total = 0.0;
      for (int level = 0; level < kNumGranularityLevels; ++level) {
        const double scale = noise_spec_for(MetricKind::kVisits, level).scale_b;
        for (int pair = 0; pair < 4; ++pair) {
          total += (with_user ? 1.0 : 0.0) + sample_laplace(scale, rng);
        }
      }
      return total;
    };
  };
  AuditVerdict verdict = audit_mechanism(day_total(false), day_total(true),
                                         1.76, 400'000, HistogramSpec{2.0, 50}, 5);
  CHECK(verdict.pass);
}
