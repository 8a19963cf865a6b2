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

#ifndef MOBIDP_BOUNDING_HPP_
#define MOBIDP_BOUNDING_HPP_

#include <span>
#include <string>
#include <vector>

#include "mobidp/domain.hpp"
#include "mobidp/rng.hpp"

namespace mobidp {

// Maximum <category, location> pairs one user may contribute per day and per
// granularity level.
struct ContributionCap {
  int max_pairs = 4;
};

// One <category, region-at-level> pair from a single user-day.
struct CategoryRegionPair {
  PlaceCategory category = PlaceCategory::kRetail;
  std::string region_id;

  bool operator==(const CategoryRegionPair&) const = default;
  bool operator<(const CategoryRegionPair& other) const {
    if (category != other.category) return category < other.category;
    return region_id < other.region_id;
  }
};

// Distinct <category, region> pairs of one user on one day at one level.
// Repeated visits to the same pair collapse to one. Throws
// std::invalid_argument on mixed user/date input.
std::vector<CategoryRegionPair> dedupe_pairs(std::span<const VisitEvent> events,
                                             int level);

// Keeps at most cap.max_pairs pairs, chosen uniformly at random without
// replacement (seeded Fisher-Yates partial shuffle). Under-cap inputs pass
// through unchanged.
std::vector<CategoryRegionPair> cap_contributions(
    std::vector<CategoryRegionPair> pairs, ContributionCap cap, Rng& rng);

}  // namespace mobidp

#endif  // MOBIDP_BOUNDING_HPP_
