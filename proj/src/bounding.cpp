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

#include "mobidp/bounding.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace mobidp {

std::vector<CategoryRegionPair> dedupe_pairs(std::span<const VisitEvent> events,
                                             int level) {
  if (level < 0 || level >= kNumGranularityLevels) {
    throw std::invalid_argument("granularity level out of range");
  }
  std::set<CategoryRegionPair> distinct;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const VisitEvent& e = events[i];
    if (e.user_id != events[0].user_id || e.date != events[0].date) {
      throw std::invalid_argument("dedupe_pairs: mixed user/date input");
    }
    distinct.insert({e.category, e.region_path[level]});
  }
  return {distinct.begin(), distinct.end()};
}

std::vector<CategoryRegionPair> cap_contributions(
    std::vector<CategoryRegionPair> pairs, ContributionCap cap, Rng& rng) {
  const std::size_t n = pairs.size();
  const std::size_t k = static_cast<std::size_t>(cap.max_pairs);
  if (n <= k) return pairs;
  // Partial Fisher-Yates: after i swaps, pairs[0..i) is a uniform i-subset.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_int(n - i);
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(k);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace mobidp
