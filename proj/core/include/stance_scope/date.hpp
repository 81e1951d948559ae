// Copyright 2026 The stance-scope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STANCE_SCOPE_DATE_HPP_
#define STANCE_SCOPE_DATE_HPP_

#include <chrono>
#include <string>
#include <string_view>

namespace stance_scope {

using Date = std::chrono::year_month_day;

// Parses an ISO "YYYY-MM-DD" date. Throws DataError on anything else.
Date parse_date(std::string_view text);

std::string format_date(const Date& date);

inline Date add_days(const Date& date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

inline int days_between(const Date& from, const Date& to) {
  return static_cast<int>(
      (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count());
}

}  // namespace stance_scope

#endif  // STANCE_SCOPE_DATE_HPP_
