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

#ifndef MOBIDP_DOMAIN_HPP_
#define MOBIDP_DOMAIN_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobidp/date.hpp"

namespace mobidp {

inline constexpr int kNumGranularityLevels = 3;

// One of the seven place categories derived from the data.
enum class PlaceCategory {
  kRetail,
  kRecreation,
  kEateries,
  kGroceries,
  kPharmacies,
  kTransit,
  kParks,
};

inline constexpr std::array<PlaceCategory, 7> kAllCategories = {
    PlaceCategory::kRetail,     PlaceCategory::kRecreation,
    PlaceCategory::kEateries,   PlaceCategory::kGroceries,
    PlaceCategory::kPharmacies, PlaceCategory::kTransit,
    PlaceCategory::kParks,
};

// The six columns of the published report. The first four are visit-count
// columns fed by the seven categories; workplaces and residential come from
// their own metric families.
enum class ReportColumn {
  kRetailAndRecreation,
  kGroceryAndPharmacy,
  kParks,
  kTransitStations,
  kWorkplaces,
  kResidential,
};

inline constexpr std::array<ReportColumn, 6> kAllColumns = {
    ReportColumn::kRetailAndRecreation, ReportColumn::kGroceryAndPharmacy,
    ReportColumn::kParks,               ReportColumn::kTransitStations,
    ReportColumn::kWorkplaces,          ReportColumn::kResidential,
};

// Total mapping from the 7 categories onto the 4 published visit columns.
ReportColumn published_column_of(PlaceCategory category);

// Constituent categories of a visit column (empty for workplaces/residential).
std::vector<PlaceCategory> categories_of_column(ReportColumn column);

std::string to_string(PlaceCategory category);
PlaceCategory category_from_string(const std::string& name);

std::string to_string(ReportColumn column);

// Node in the 3-level geography tree.
struct RegionNode {
  std::string id;
  std::string name;
  int level = 0;  // 0 country, 1 first-level subdivision, 2 finer subdivision
  std::string parent_id;  // empty for level 0
  double area_km2 = 0.0;
  std::string country_code;  // ISO-3166-1 alpha-2
};

struct ValidationResult {
  bool ok = true;
  std::string message;  // names the first offending node on rejection
};

// Ancestor chain of region ids: [level 0, level 1, level 2].
using RegionPath = std::array<std::string, kNumGranularityLevels>;

// Validated geography tree, immutable after construction.
class RegionTree {
 public:
  // Throws std::invalid_argument if the collection fails validation.
  explicit RegionTree(std::vector<RegionNode> regions);

  static ValidationResult validate(const std::vector<RegionNode>& regions);

  // Line-delimited JSON, one region per line.
  static RegionTree load(const std::string& path);
  void save(const std::string& path) const;

  const RegionNode* find(const std::string& id) const;
  const std::vector<RegionNode>& all() const { return regions_; }
  std::vector<const RegionNode*> at_level(int level) const;

  // True iff path is a valid ancestor chain in this tree.
  bool is_valid_path(const RegionPath& path) const;

 private:
  std::vector<RegionNode> regions_;
  std::map<std::string, std::size_t> index_;
};

// Per-user per-day raw facts entering the privacy boundary. user_id is
// opaque and never appears in any output artifact.
struct VisitEvent {
  std::string user_id;
  Date date;
  PlaceCategory category = PlaceCategory::kRetail;
  RegionPath region_path;
};

struct ResidentialStay {
  std::string user_id;
  Date date;
  double hours_at_residence = 0.0;  // in [0, 24]
  RegionPath region_path;           // region of residence
};

struct WorkStay {
  std::string user_id;
  Date date;
  double hours_at_workplace = 0.0;
  RegionPath residence_region_path;  // aggregation key is the residence
};

// Raw event collections for one pipeline run.
struct EventSet {
  std::vector<VisitEvent> visits;
  std::vector<ResidentialStay> residential;
  std::vector<WorkStay> work;
};

// Line-delimited JSON serialization (visits.jsonl, residential.jsonl,
// workplaces.jsonl under a directory).
EventSet load_events(const std::string& dir);
void save_events(const EventSet& events, const std::string& dir);

}  // namespace mobidp

#endif  // MOBIDP_DOMAIN_HPP_
