// Copyright 2026 The MRT Authors
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
// Category g-functions, backward bid computation and 2-bid ranking.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mrt::bids {

// Business-time durations in hours. A day is one 6.5h trading session.
namespace hours {
inline constexpr double kHour = 1.0;
inline constexpr double kDay = 6.5;
inline constexpr double kWeek = 5 * kDay;
inline constexpr double kMonth = 22 * kDay;
inline constexpr double kTwoMonths = 45 * kDay;
inline constexpr double kThreeMonths = 65 * kDay;
inline constexpr double kFourMonths = 86 * kDay;
inline constexpr double kSixMonths = 126 * kDay;
inline constexpr double kNineMonths = 191 * kDay;
inline constexpr double kTwelveMonths = 252 * kDay;
}  // namespace hours

// Parses labels such as "2h", "1d", "3w", "4m", "12m" into hours.
// Months use the fixed business-day table (2m = 45d, 4m = 86d, ...).
double parse_duration(std::string_view label);

inline constexpr int kNumCategories = 7;

// Prime time-interval of category 1..7 in hours.
double prime_interval(int category);
std::string_view category_name(int category);

// Expected percent return of a unit bid after t hours in the given category.
double g(double t_hours, int category);

// floor() after a 1e-9 upward nudge; protects values sitting on a step.
double nudged_floor(double x);

struct RescaleCoeff {
  double beta = 1.0;
  explicit RescaleCoeff(double b = 1.0);
};

// Floor[100 beta |p_now - p_then| / (g(span, c) p_then)].
int bid_backward(double p_now, double p_then, double span_hours, int category, double beta);

struct TwoBid {
  int b = 0;  // bid integer
  int c = 1;  // category 1..7
  int m = 1;  // depth in prime intervals

  bool admissible() const { return b >= 1; }
  friend bool operator==(const TwoBid&, const TwoBid&) = default;
};

// Strict "ranks above": larger b, then smaller category, then smaller depth.
bool ranks_above(const TwoBid& lhs, const TwoBid& rhs);

// Stable sort with the best 2-bid first. Throws DomainError on empty input.
std::vector<TwoBid> rank(std::span<const TwoBid> bids);

}  // namespace mrt::bids
