# Copyright 2026 The mobidp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import statistics

try:
    import mobidp as m
except ImportError:  # ctest runs against the bare extension module
    import _mobidp as m


def test_noise_table():
    spec = m.noise_spec_for("visits", 0)
    assert math.isclose(spec.scale_b, 1.0 / 0.11)
    assert math.isclose(spec.epsilon, 0.11)
    assert math.isclose(spec.stddev(), math.sqrt(2.0) / 0.11)
    assert math.isclose(m.noise_spec_for("residential_sum", 2).scale_b, 12.0 / 0.11)


def test_budget_totals():
    assert m.user_day_budget() == 1.76
    families = m.budget_per_family()
    assert families["visits"] == 1.76
    assert families["residential"] == 0.44
    assert families["workplaces"] == 0.44


def test_laplace_sampling_and_ci():
    draws = m.sample_laplace(9.09, seed=7, n=50_000)
    assert abs(statistics.mean(draws)) < 0.5
    assert math.isclose(statistics.pstdev(draws), 9.09 * math.sqrt(2), rel_tol=0.05)
    # Deterministic under the same seed.
    assert draws[:10] == m.sample_laplace(9.09, seed=7, n=10)

    half = m.laplace_ci_half_width(9.09, 0.975)
    assert math.isclose(half, 9.09 * math.log(40.0))
    lo, hi = m.laplace_ci(100.0, 9.09, 0.975)
    assert math.isclose(hi - lo, 2 * half)


def test_percent_change_and_baseline_days():
    assert m.percent_change(110.0, 100.0) == 10
    assert m.percent_change(80.0, 100.0) == -20
    days = m.baseline_days("2020-03-20")  # a Friday
    assert days == [
        "2020-01-03",
        "2020-01-10",
        "2020-01-17",
        "2020-01-24",
        "2020-01-31",
    ]


def test_end_to_end_pipeline(tmp_path):
    scenario = {
        "seed": 11,
        "regions": [
            {"id": "US", "name": "United States", "level": 0,
             "area_km2": 9.8e6, "country_code": "US"},
            {"id": "US-CA", "name": "California", "level": 1,
             "parent_id": "US", "area_km2": 4.2e5, "country_code": "US"},
            {"id": "US-CA-01", "name": "Alameda County", "level": 2,
             "parent_id": "US-CA", "area_km2": 2100.0, "country_code": "US"},
            {"id": "US-CA-02", "name": "Marin County", "level": 2,
             "parent_id": "US-CA", "area_km2": 2100.0, "country_code": "US"},
        ],
        "start_date": "2020-03-02",
        "end_date": "2020-03-08",
        "cutover_date": "2020-03-05",
        "baseline_start": "2020-03-02",
        "baseline_end": "2020-03-03",
        "users_per_county": 20,
        "visit_rates": {"groceries": 0.5, "parks": 0.3},
    }
    scenario_path = tmp_path / "scenario.json"
    scenario_path.write_text(json.dumps(scenario))

    data_dir = tmp_path / "data"
    m.generate(str(scenario_path), str(data_dir))
    assert (data_dir / "regions.jsonl").exists()
    assert (data_dir / "visits.jsonl").exists()

    store_path = tmp_path / "store.jsonl"
    m.aggregate(
        regions=str(data_dir / "regions.jsonl"),
        events=str(data_dir),
        out=str(store_path),
        start="2020-03-02",
        end="2020-03-08",
        seed=3,
    )
    lines = store_path.read_text().splitlines()
    # Full schema: 4 regions x 7 days x (7 visits + 2 residential + 1 work).
    assert len(lines) == 4 * 7 * 10


def test_audit_smoke():
    records = m.audit(trials=60_000, seed=1)
    assert len(records) == 6
    assert all(r["pass"] for r in records)
