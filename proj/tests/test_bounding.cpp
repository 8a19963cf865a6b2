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

#include <map>

#include "mobidp/bounding.hpp"
#include "test_util.hpp"

using namespace mobidp;

namespace {

std::vector<VisitEvent> fourteen_pair_day() {
  // All 7 categories in two distinct countries on the same day: 14 pairs at
  // country level.
  std::vector<VisitEvent> events;
  for (PlaceCategory c : kAllCategories) {
    events.push_back({"u1", Date(2020, 3, 2), c, {"US", "US-CA", "US-CA-01"}});
    events.push_back({"u1", Date(2020, 3, 2), c, {"CA", "CA-ON", "CA-ON-01"}});
  }
  return events;
}

}  // namespace

TEST_CASE("dedupe collapses repeat visits to one pair") {
  std::vector<VisitEvent> events(3, {"u1", Date(2020, 3, 2),
                                     PlaceCategory::kGroceries,
                                     testing::toy_path("US-CA-01")});
  auto pairs = dedupe_pairs(events, 2);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].category == PlaceCategory::kGroceries);
  CHECK(pairs[0].region_id == "US-CA-01");
}

TEST_CASE("dedupe: 7 categories in 2 countries gives 14 country-level pairs") {
  auto pairs = dedupe_pairs(fourteen_pair_day(), 0);
  CHECK(pairs.size() == 14);
}

TEST_CASE("dedupe of empty input is empty") {
  CHECK(dedupe_pairs({}, 0).empty());
}

TEST_CASE("dedupe rejects mixed user or date input") {
  std::vector<VisitEvent> events = {
      {"u1", Date(2020, 3, 2), PlaceCategory::kParks, testing::toy_path("US-CA-01")},
      {"u2", Date(2020, 3, 2), PlaceCategory::kParks, testing::toy_path("US-CA-01")},
  };
  CHECK_THROWS_AS(dedupe_pairs(events, 0), std::invalid_argument);
}

TEST_CASE("capping keeps at most 4 of 14 and passes under-cap sets through") {
  auto pairs = dedupe_pairs(fourteen_pair_day(), 0);
  Rng rng(5);
  auto capped = cap_contributions(pairs, ContributionCap{4}, rng);
  CHECK(capped.size() == 4);

  std::vector<CategoryRegionPair> three = {pairs[0], pairs[1], pairs[2]};
  auto kept = cap_contributions(three, ContributionCap{4}, rng);
  CHECK(kept.size() == 3);
}

TEST_CASE("capping is deterministic given the seed") {
  auto pairs = dedupe_pairs(fourteen_pair_day(), 0);
  Rng a(17), b(17);
  CHECK(cap_contributions(pairs, ContributionCap{4}, a) ==
        cap_contributions(pairs, ContributionCap{4}, b));
}

TEST_CASE("uniform subset: marginal retention frequency is cap/|pairs|") {
  // Hypergeometric oracle: each of the 14 pairs is retained with marginal
  // probability exactly 4/14.
  auto pairs = dedupe_pairs(fourteen_pair_day(), 0);
  const int trials = 100'000;
  std::map<CategoryRegionPair, int> retained;
  Rng rng(2024);
  for (int t = 0; t < trials; ++t) {
    for (const auto& p : cap_contributions(pairs, ContributionCap{4}, rng)) {
      retained[p] += 1;
    }
  }
  REQUIRE(retained.size() == 14);
  for (const auto& [pair, count] : retained) {
    CHECK(static_cast<double>(count) / trials ==
          doctest::Approx(4.0 / 14.0).epsilon(0.035));  // 4/14 +/- 0.01
  }
}
