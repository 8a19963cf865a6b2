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

"""Python bindings for the DP mobility metrics pipeline."""

from ._mobidp import (
    NoiseSpec,
    aggregate,
    audit,
    baseline_days,
    budget_per_family,
    generate,
    laplace_ci,
    laplace_ci_half_width,
    noise_spec_for,
    percent_change,
    report,
    sample_laplace,
    scale,
    user_day_budget,
)

__all__ = [
    "NoiseSpec",
    "aggregate",
    "audit",
    "baseline_days",
    "budget_per_family",
    "generate",
    "laplace_ci",
    "laplace_ci_half_width",
    "noise_spec_for",
    "percent_change",
    "report",
    "sample_laplace",
    "scale",
    "user_day_budget",
]
