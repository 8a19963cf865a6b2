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

#ifndef MOBIDP_DATE_HPP_
#define MOBIDP_DATE_HPP_

#include <chrono>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobidp {

// Calendar date without a time zone. A "day" is a local civil day chosen at
// ingestion time; all arithmetic is in whole days.
class Date {
 public:
  Date() : days_(0) {}
  explicit Date(std::chrono::sys_days d) : days_(d.time_since_epoch().count()) {}
  Date(int year, unsigned month, unsigned day)
      : Date(std::chrono::sys_days(std::chrono::year{year} /
                                   std::chrono::month{month} /
                                   std::chrono::day{day})) {}

  // Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input.
  static Date parse(const std::string& iso);

  std::string to_string() const;  // ISO-8601, "YYYY-MM-DD"

  // 0 = Monday ... 6 = Sunday.
  int weekday() const {
    std::chrono::weekday wd{sys_days()};
    return static_cast<int>(wd.iso_encoding()) - 1;
  }

  std::chrono::sys_days sys_days() const {
    return std::chrono::sys_days(std::chrono::days(days_));
  }

  Date operator+(int days) const {
    Date d;
    d.days_ = days_ + days;
    return d;
  }
  Date operator-(int days) const { return *this + (-days); }
  int operator-(const Date& other) const {
    return static_cast<int>(days_ - other.days_);
  }

  auto operator<=>(const Date&) const = default;

 private:
  std::int64_t days_;  // days since the Unix epoch
};

// Inclusive range [first, last], in order.
std::vector<Date> date_range(Date first, Date last);

}  // namespace mobidp

#endif  // MOBIDP_DATE_HPP_
