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

#include "mobidp/scaling.hpp"
#include "test_util.hpp"

using namespace mobidp;

namespace {

MetricGroup parks_group() {
  MetricGroup g;
  g.id = "parks-us-period";
  g.family = MetricFamily::kVisits;
  g.category = PlaceCategory::kParks;
  g.level = 0;
  g.region_ids = {"US"};
  g.period_start = Date(2020, 3, 2);
  g.period_end = Date(2020, 3, 4);
  return g;
}

MetricStore store_with_parks(const std::vector<double>& values, Date start) {
  MetricStore store;
  for (std::size_t i = 0; i < values.size(); ++i) {
    DailyMetricKey key{"US", start + static_cast<int>(i), MetricFamily::kVisits,
                       PlaceCategory::kParks};
    NoisyMetric m;
    m.kind = MetricKind::kVisits;
    m.noise = noise_spec_for(MetricKind::kVisits, 0);
    m.value = values[i];
    store.put(key, m);
  }
  return store;
}

}  // namespace

TEST_CASE("old noisy sum is a plain sum of member values") {
  MetricStore store = store_with_parks({100, 200, 300}, Date(2020, 3, 2));
  CHECK(old_noisy_sum(store, parks_group()) == 600.0);

  MetricGroup singleton = parks_group();
  singleton.period_end = singleton.period_start;
  CHECK(old_noisy_sum(store, singleton) == 100.0);

  MetricGroup empty = parks_group();
  empty.region_ids.clear();
  CHECK_THROWS_AS(old_noisy_sum(store, empty), std::invalid_argument);

  MetricGroup wider = parks_group();
  wider.period_end = Date(2020, 3, 10);  // members missing from the store
  CHECK_THROWS_AS(old_noisy_sum(store, wider), std::runtime_error);
}

TEST_CASE("new noisy sum noise scale follows the budget fraction") {
  // Level 2 visits, fraction 0.10, sensitivity 1: scale 1/(0.10*0.22).
  const double expected_scale = 1.0 / (0.10 * 0.22);
  Rng rng(21);
  const int trials = 200'000;
  double sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double draw =
        new_noisy_sum(0.0, MetricKind::kVisits, 2, 0.10, 1.0, rng);
    sq += draw * draw;
  }
  CHECK(std::sqrt(sq / trials) ==
        doctest::Approx(expected_scale * std::sqrt(2.0)).epsilon(0.02));

  CHECK_THROWS_AS(new_noisy_sum(0.0, MetricKind::kVisits, 2, 0.0, 1.0, rng),
                  std::invalid_argument);
}

TEST_CASE("fraction 1.0 degenerates to the per-cell table scale") {
  Rng a(5), b(5);
  const double draw = new_noisy_sum(10.0, MetricKind::kVisits, 0, 1.0, 1.0, a);
  const double direct = 10.0 + sample_laplace(noise_spec_for(MetricKind::kVisits, 0).scale_b, b);
  CHECK(draw == direct);
}

TEST_CASE("apply_scaling arithmetic and error cases") {
  ScalingFactor factor;
  factor.group_id = "g";
  factor.s_g = 1000.0;
  factor.s_n = 1100.0;
  factor.factor = 1.1;
  factor.usable = true;
  CHECK(apply_scaling(50.0, factor, ScalingDirection::kScaleBaseline) ==
        doctest::Approx(55.0));
  CHECK(apply_scaling(55.0, factor, ScalingDirection::kScaleDaily) ==
        doctest::Approx(50.0));

  factor.s_n = factor.s_g;
  CHECK(apply_scaling(50.0, factor, ScalingDirection::kScaleBaseline) == 50.0);

  ScalingFactor unusable;
  CHECK_THROWS_AS(apply_scaling(1.0, unusable, ScalingDirection::kScaleDaily),
                  std::invalid_argument);
}

TEST_CASE("budget spent per rollout is fraction times level epsilon") {
  MetricStore published = store_with_parks({100, 200, 300}, Date(2020, 3, 2));
  MetricStore recomputed = store_with_parks({125, 250, 375}, Date(2020, 3, 2));
  ScalingFactor factor = compute_scaling_factor(
      published, recomputed, parks_group(), 0.10, std::nullopt, 7);
  CHECK(factor.epsilon_spent == doctest::Approx(0.10 * 0.11).epsilon(1e-12));
  // Independent of group size.
  MetricGroup singleton = parks_group();
  singleton.period_end = singleton.period_start;
  ScalingFactor single = compute_scaling_factor(published, recomputed,
                                                singleton, 0.10, std::nullopt, 7);
  CHECK(single.epsilon_spent == factor.epsilon_spent);
}

TEST_CASE("with noise disabled, scaling reproduces full recomputation exactly") {
  // Uniform +25% logic change over period and beyond.
  std::vector<double> old_values = {100, 200, 300, 400, 500};
  std::vector<double> new_values = {125, 250, 375, 500, 625};
  MetricStore published = store_with_parks(old_values, Date(2020, 3, 2));
  MetricStore recomputed = store_with_parks(new_values, Date(2020, 3, 2));

  MetricGroup group = parks_group();  // period covers the first 3 days
  ScalingFactor factor =
      compute_scaling_factor(published, recomputed, group, 0.10, std::nullopt,
                             7, /*noise_enabled=*/false);
  REQUIRE(factor.usable);
  CHECK(factor.factor == doctest::Approx(1.25));

  // Scaling the new-logic daily values back by s_g/s_n reproduces the
  // old-logic values exactly.
  MetricStore scaled = apply_scaling_to_store(recomputed, group, factor,
                                              ScalingDirection::kScaleDaily);
  for (int i = 3; i < 5; ++i) {
    DailyMetricKey key{"US", Date(2020, 3, 2) + i, MetricFamily::kVisits,
                       PlaceCategory::kParks};
    CHECK(scaled.get(key, MetricKind::kVisits)->value ==
          doctest::Approx(old_values[i]));
  }
  // Cells inside the period pass through untouched.
  DailyMetricKey inside{"US", Date(2020, 3, 2), MetricFamily::kVisits,
                        PlaceCategory::kParks};
  CHECK(scaled.get(inside, MetricKind::kVisits)->value == 125.0);
}

TEST_CASE("larger groups reduce relative noise on the factor") {
  // stddev(s_n)/E[s_n] shrinks as the group raw sum grows.
  const double sens = 1.0;
  auto relative_spread = [&](double raw_sum, std::uint64_t seed) {
    Rng rng(seed);
    const int trials = 20'000;
    double sum = 0.0, sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double s =
          new_noisy_sum(raw_sum, MetricKind::kVisits, 0, 0.10, sens, rng);
      sum += s;
      sq += s * s;
    }
    const double mean = sum / trials;
    return std::sqrt(sq / trials - mean * mean) / mean;
  };
  CHECK(relative_spread(50'000.0, 1) < relative_spread(5'000.0, 2));
}
