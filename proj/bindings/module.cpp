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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mobidp/pipeline.hpp"

namespace py = pybind11;
using namespace mobidp;

PYBIND11_MODULE(_mobidp, m) {
  m.doc() = "Differentially private mobility metrics pipeline";

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def_readonly("scale_b", &NoiseSpec::scale_b)
      .def_readonly("epsilon", &NoiseSpec::epsilon)
      .def_readonly("sensitivity", &NoiseSpec::sensitivity)
      .def("stddev", &NoiseSpec::stddev);

  m.def(
      "noise_spec_for",
      [](const std::string& kind, int level) {
        return noise_spec_for(metric_kind_from_string(kind), level);
      },
      py::arg("kind"), py::arg("level"));

  m.def(
      "sample_laplace",
      [](double scale_b, std::uint64_t seed, long n) {
        Rng rng(seed);
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) out.push_back(sample_laplace(scale_b, rng));
        return out;
      },
      py::arg("scale_b"), py::arg("seed"), py::arg("n") = 1);

  m.def("laplace_ci_half_width", &laplace_ci_half_width, py::arg("scale_b"),
        py::arg("coverage"));
  m.def(
      "laplace_ci",
      [](double value, double scale_b, double coverage) {
        Interval ci = laplace_ci(value, scale_b, coverage);
        return std::make_pair(ci.lo, ci.hi);
      },
      py::arg("value"), py::arg("scale_b"), py::arg("coverage"));

  m.def("percent_change", &percent_change, py::arg("metric"),
        py::arg("baseline"));

  m.def("user_day_budget", [] {
    BudgetReport r = budget_report(visit_day_entries(4));
    return r.per_user_day_total;
  });
  m.def(
      "budget_per_family",
      [](int capped_pairs) {
        std::vector<BudgetEntry> entries = visit_day_entries(capped_pairs);
        for (const auto& e : residential_user_entries()) entries.push_back(e);
        for (const auto& e : workplace_user_entries()) entries.push_back(e);
        return budget_report(entries).per_family;
      },
      py::arg("capped_pairs") = 4);

  m.def(
      "baseline_days",
      [](const std::string& date) {
        std::vector<std::string> out;
        for (Date d : baseline_days_for(Date::parse(date), ReportConfig{})) {
          out.push_back(d.to_string());
        }
        return out;
      },
      py::arg("date"));

  m.def("generate", &run_generate, py::arg("scenario_path"),
        py::arg("out_dir"));

  m.def(
      "aggregate",
      [](const std::string& regions, const std::string& events,
         const std::string& out, const std::string& start,
         const std::string& end, std::uint64_t seed, bool noise) {
        AggregateConfig config;
        config.regions_path = regions;
        config.events_dir = events;
        config.store_path = out;
        config.start_date = Date::parse(start);
        config.end_date = Date::parse(end);
        config.root_seed = seed;
        config.noise_enabled = noise;
        run_aggregate(config);
      },
      py::arg("regions"), py::arg("events"), py::arg("out"), py::arg("start"),
      py::arg("end"), py::arg("seed") = 0, py::arg("noise") = true);

  m.def(
      "report",
      [](const std::string& regions, const std::string& store,
         const std::string& csv, const std::string& sidecar,
         const std::string& start, const std::string& end) {
        ReportFileConfig config;
        config.regions_path = regions;
        config.store_path = store;
        config.csv_path = csv;
        config.sidecar_path = sidecar;
        config.start_date = Date::parse(start);
        config.end_date = Date::parse(end);
        run_report(config);
      },
      py::arg("regions"), py::arg("store"), py::arg("csv"), py::arg("sidecar"),
      py::arg("start"), py::arg("end"));

  m.def(
      "audit",
      [](long trials, std::uint64_t seed, bool break_scale) {
        std::vector<py::dict> out;
        for (const AuditRecord& r : run_audit(trials, seed, break_scale)) {
          py::dict d;
          d["mechanism"] = r.mechanism;
          d["level"] = r.level;
          d["claimed_epsilon"] = r.verdict.claimed;
          d["empirical_bound"] = r.verdict.empirical_epsilon_lower_bound;
          d["slack"] = r.verdict.slack;
          d["pass"] = r.verdict.pass;
          out.push_back(d);
        }
        return out;
      },
      py::arg("trials") = 100000, py::arg("seed") = 0,
      py::arg("break_scale") = false);

  m.def(
      "scale",
      [](const std::string& published, const std::string& recomputed,
         const std::string& groups, const std::string& ledger,
         const std::string& scaled_store, double fraction, std::uint64_t seed,
         bool noise) {
        ScaleFileConfig config;
        config.published_store_path = published;
        config.recomputed_store_path = recomputed;
        config.groups_path = groups;
        config.ledger_path = ledger;
        config.scaled_store_path = scaled_store;
        config.budget_fraction = fraction;
        config.root_seed = seed;
        config.noise_enabled = noise;
        run_scale(config);
      },
      py::arg("published"), py::arg("recomputed"), py::arg("groups"),
      py::arg("ledger"), py::arg("scaled_store") = std::string(),
      py::arg("fraction") = 0.10, py::arg("seed") = 0,
      py::arg("noise") = true);
}
