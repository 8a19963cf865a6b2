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

#include "mobidp/domain.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mobidp {

using nlohmann::json;

ReportColumn published_column_of(PlaceCategory category) {
  switch (category) {
    case PlaceCategory::kRetail:
    case PlaceCategory::kRecreation:
    case PlaceCategory::kEateries:
      return ReportColumn::kRetailAndRecreation;
    case PlaceCategory::kGroceries:
    case PlaceCategory::kPharmacies:
      return ReportColumn::kGroceryAndPharmacy;
    case PlaceCategory::kTransit:
      return ReportColumn::kTransitStations;
    case PlaceCategory::kParks:
      return ReportColumn::kParks;
  }
  throw std::invalid_argument("unknown category");
}

std::vector<PlaceCategory> categories_of_column(ReportColumn column) {
  std::vector<PlaceCategory> out;
  for (PlaceCategory c : kAllCategories) {
    if (published_column_of(c) == column) out.push_back(c);
  }
  return out;
}

std::string to_string(PlaceCategory category) {
  switch (category) {
    case PlaceCategory::kRetail: return "retail";
    case PlaceCategory::kRecreation: return "recreation";
    case PlaceCategory::kEateries: return "eateries";
    case PlaceCategory::kGroceries: return "groceries";
    case PlaceCategory::kPharmacies: return "pharmacies";
    case PlaceCategory::kTransit: return "transit";
    case PlaceCategory::kParks: return "parks";
  }
  throw std::invalid_argument("unknown category");
}

PlaceCategory category_from_string(const std::string& name) {
  for (PlaceCategory c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown category: " + name);
}

std::string to_string(ReportColumn column) {
  switch (column) {
    case ReportColumn::kRetailAndRecreation: return "retail_and_recreation";
    case ReportColumn::kGroceryAndPharmacy: return "grocery_and_pharmacy";
    case ReportColumn::kParks: return "parks";
    case ReportColumn::kTransitStations: return "transit_stations";
    case ReportColumn::kWorkplaces: return "workplaces";
    case ReportColumn::kResidential: return "residential";
  }
  throw std::invalid_argument("unknown column");
}

RegionTree::RegionTree(std::vector<RegionNode> regions)
    : regions_(std::move(regions)) {
  ValidationResult result = validate(regions_);
  if (!result.ok) {
    throw std::invalid_argument("invalid region tree: " + result.message);
  }
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    index_[regions_[i].id] = i;
  }
}

ValidationResult RegionTree::validate(const std::vector<RegionNode>& regions) {
  std::map<std::string, const RegionNode*> by_id;
  for (const RegionNode& r : regions) {
    if (by_id.count(r.id)) {
      return {false, "duplicate region id: " + r.id};
    }
    by_id[r.id] = &r;
  }
  for (const RegionNode& r : regions) {
    if (r.level < 0 || r.level >= kNumGranularityLevels) {
      return {false, "region " + r.id + ": level out of range"};
    }
    if (!(r.area_km2 > 0.0)) {
      return {false, "region " + r.id + ": nonpositive area"};
    }
    if (r.level == 0) {
      if (!r.parent_id.empty()) {
        return {false, "region " + r.id + ": level 0 node has a parent"};
      }
      continue;
    }
    auto it = by_id.find(r.parent_id);
    if (r.parent_id.empty() || it == by_id.end()) {
      return {false, "region " + r.id + ": orphan node"};
    }
    const RegionNode& parent = *it->second;
    if (parent.level != r.level - 1) {
      return {false, "region " + r.id + ": level gap to parent " + parent.id};
    }
    if (parent.country_code != r.country_code) {
      return {false, "region " + r.id + ": cross-country parent " + parent.id};
    }
  }
  return {true, ""};
}

const RegionNode* RegionTree::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &regions_[it->second];
}

std::vector<const RegionNode*> RegionTree::at_level(int level) const {
  std::vector<const RegionNode*> out;
  for (const RegionNode& r : regions_) {
    if (r.level == level) out.push_back(&r);
  }
  return out;
}

bool RegionTree::is_valid_path(const RegionPath& path) const {
  const RegionNode* prev = nullptr;
  for (int level = 0; level < kNumGranularityLevels; ++level) {
    const RegionNode* node = find(path[level]);
    if (node == nullptr || node->level != level) return false;
    if (prev != nullptr && node->parent_id != prev->id) return false;
    prev = node;
  }
  return true;
}

RegionTree RegionTree::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open region file: " + path);
  std::vector<RegionNode> regions;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    RegionNode r;
    r.id = j.at("id").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.level = j.at("level").get<int>();
    r.parent_id = j.value("parent_id", std::string{});
    r.area_km2 = j.at("area_km2").get<double>();
    r.country_code = j.at("country_code").get<std::string>();
    regions.push_back(std::move(r));
  }
  return RegionTree(std::move(regions));
}

void RegionTree::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write region file: " + path);
  for (const RegionNode& r : regions_) {
    json j{{"id", r.id},
           {"name", r.name},
           {"level", r.level},
           {"parent_id", r.parent_id},
           {"area_km2", r.area_km2},
           {"country_code", r.country_code}};
    out << j.dump() << "\n";
  }
}

namespace {

json path_to_json(const RegionPath& p) { return json{p[0], p[1], p[2]}; }

RegionPath path_from_json(const json& j) {
  return {j.at(0).get<std::string>(), j.at(1).get<std::string>(),
          j.at(2).get<std::string>()};
}

}  // namespace

EventSet load_events(const std::string& dir) {
  EventSet events;
  auto each_line = [](const std::string& path, auto&& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open event file: " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) fn(json::parse(line));
    }
  };
  each_line(dir + "/visits.jsonl", [&](const json& j) {
    events.visits.push_back(
        {j.at("user_id").get<std::string>(),
         Date::parse(j.at("date").get<std::string>()),
         category_from_string(j.at("category").get<std::string>()),
         path_from_json(j.at("region_path"))});
  });
  each_line(dir + "/residential.jsonl", [&](const json& j) {
    events.residential.push_back({j.at("user_id").get<std::string>(),
                                  Date::parse(j.at("date").get<std::string>()),
                                  j.at("hours_at_residence").get<double>(),
                                  path_from_json(j.at("region_path"))});
  });
  each_line(dir + "/workplaces.jsonl", [&](const json& j) {
    events.work.push_back({j.at("user_id").get<std::string>(),
                           Date::parse(j.at("date").get<std::string>()),
                           j.at("hours_at_workplace").get<double>(),
                           path_from_json(j.at("residence_region_path"))});
  });
  return events;
}

void save_events(const EventSet& events, const std::string& dir) {
  auto open = [](const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write event file: " + path);
    return out;
  };
  {
    std::ofstream out = open(dir + "/visits.jsonl");
    for (const VisitEvent& e : events.visits) {
      out << json{{"user_id", e.user_id},
                  {"date", e.date.to_string()},
                  {"category", to_string(e.category)},
                  {"region_path", path_to_json(e.region_path)}}
                 .dump()
          << "\n";
    }
  }
  {
    std::ofstream out = open(dir + "/residential.jsonl");
    for (const ResidentialStay& e : events.residential) {
      out << json{{"user_id", e.user_id},
                  {"date", e.date.to_string()},
                  {"hours_at_residence", e.hours_at_residence},
                  {"region_path", path_to_json(e.region_path)}}
                 .dump()
          << "\n";
    }
  }
  {
    std::ofstream out = open(dir + "/workplaces.jsonl");
    for (const WorkStay& e : events.work) {
      out << json{{"user_id", e.user_id},
                  {"date", e.date.to_string()},
                  {"hours_at_workplace", e.hours_at_workplace},
                  {"residence_region_path", path_to_json(e.residence_region_path)}}
                 .dump()
          << "\n";
    }
  }
}

}  // namespace mobidp
