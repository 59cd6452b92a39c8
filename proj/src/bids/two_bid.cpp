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
#include "mrt/bids/two_bid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mrt/core/error.hpp"

namespace mrt::bids {
namespace {

constexpr std::array<double, kNumCategories> kPrime = {
    hours::kHour, 2 * hours::kHour, hours::kDay, 2 * hours::kDay,
    hours::kWeek, 2 * hours::kWeek, hours::kMonth};

constexpr std::array<std::string_view, kNumCategories> kNames = {
    "super", "super-ultra", "ultra", "ultra-extra", "extra", "extra-regular", "regular"};

void check_category(int c) {
  if (c < 1 || c > kNumCategories) throw DomainError("category must be in 1..7");
}

// Odd-category curve at or beyond its prime interval.
double odd_curve(double t, int c) {
  switch (c) {
    case 1:
      // The printed formula carries an extra factor 0.5; without it the curve
      // reproduces every tabulated super value (1, 1.49, 3, 6.49, 10.99, 15.01).
      return nudged_floor(1548.0 * std::pow(0.26 * t + 0.74, 0.137) - 1548.0) / 100.0 + 1.0;
    case 3:
      return 2.0 * nudged_floor(10.0 * std::pow(2.0 * t / hours::kDay - 1.0, 0.418)) / 10.0;
    case 5:
      return 0.1 * nudged_floor(22.875 * std::pow(2.024 * t / hours::kWeek - 1.024, 0.5678) + 12.125);
    default:
      return 3.5 * (nudged_floor(10.25 * t / hours::kMonth) / 10.0 + 1.0);
  }
}

double odd_g(double t, int c) {
  const double prime = kPrime[static_cast<std::size_t>(c - 1)];
  if (t >= prime) return odd_curve(t, c);
  return odd_curve(prime, c) * (2.0 * t + prime) / (3.0 * prime);
}

}  // namespace

double nudged_floor(double x) { return std::floor(x + 1e-9); }

double prime_interval(int category) {
  check_category(category);
  return kPrime[static_cast<std::size_t>(category - 1)];
}

std::string_view category_name(int category) {
  check_category(category);
  return kNames[static_cast<std::size_t>(category - 1)];
}

double g(double t_hours, int category) {
  check_category(category);
  if (!(t_hours > 0)) throw DomainError("g: t must be > 0");
  if (category % 2 == 1) return odd_g(t_hours, category);
  return 0.5 * (odd_g(t_hours, category - 1) + odd_g(t_hours, category + 1));
}

double parse_duration(std::string_view label) {
  std::size_t pos = 0;
  while (pos < label.size() && (std::isdigit(static_cast<unsigned char>(label[pos])) || label[pos] == '.')) ++pos;
  if (pos == 0 || pos + 1 != label.size()) throw DomainError("bad duration label: " + std::string(label));
  const double n = std::stod(std::string(label.substr(0, pos)));
  switch (label[pos]) {
    case 'h': return n * hours::kHour;
    case 'd': return n * hours::kDay;
    case 'w': return n * hours::kWeek;
    case 'm': {
      if (n == 1) return hours::kMonth;
      if (n == 2) return hours::kTwoMonths;
      if (n == 3) return hours::kThreeMonths;
      if (n == 4) return hours::kFourMonths;
      if (n == 6) return hours::kSixMonths;
      if (n == 9) return hours::kNineMonths;
      if (n == 12) return hours::kTwelveMonths;
      return n * hours::kMonth;
    }
    default: break;
  }
  throw DomainError("bad duration unit: " + std::string(label));
}

RescaleCoeff::RescaleCoeff(double b) : beta(b) {
  if (!(b >= 1.0)) throw DomainError("rescaling coefficient must be >= 1");
}

int bid_backward(double p_now, double p_then, double span_hours, int category, double beta) {
  if (!(p_now > 0) || !(p_then > 0)) throw DomainError("bid_backward: prices must be > 0");
  const double percent = 100.0 * beta * std::abs(p_now - p_then) / p_then;
  return static_cast<int>(nudged_floor(percent / g(span_hours, category)));
}

bool ranks_above(const TwoBid& lhs, const TwoBid& rhs) {
  if (lhs.b != rhs.b) return lhs.b > rhs.b;
  if (lhs.c != rhs.c) return lhs.c < rhs.c;
  return lhs.m < rhs.m;
}

std::vector<TwoBid> rank(std::span<const TwoBid> bids) {
  if (bids.empty()) throw DomainError("rank: empty bid list");
  std::vector<TwoBid> out(bids.begin(), bids.end());
  std::stable_sort(out.begin(), out.end(), ranks_above);
  return out;
}

}  // namespace mrt::bids
