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

#include "mobidp/date.hpp"

#include <cstdio>

namespace mobidp {

Date Date::parse(const std::string& iso) {
  int year = 0;
  unsigned month = 0;
  unsigned day = 0;
  char tail = 0;
  if (std::sscanf(iso.c_str(), "%d-%2u-%2u%c", &year, &month, &day, &tail) !=
      3) {
    throw std::invalid_argument("malformed date: " + iso);
  }
  const auto ymd =
      std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date: " + iso);
  }
  return Date(std::chrono::sys_days(ymd));
}

std::string Date::to_string() const {
  const std::chrono::year_month_day ymd{sys_days()};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::vector<Date> date_range(Date first, Date last) {
  std::vector<Date> out;
  for (Date d = first; d <= last; d = d + 1) out.push_back(d);
  return out;
}

}  // namespace mobidp
