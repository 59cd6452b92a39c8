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
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrt::bids {

enum class TableKind { kSuper, kUltra, kExtra, kRegular, kMin4Cat, kMin7Cat };

TableKind parse_table_kind(std::string_view name);
std::string_view table_kind_name(TableKind kind);

struct BidTable {
  std::string title;
  std::string corner;                          // e.g. "b\\h" or "cat"
  std::vector<std::string> column_labels;
  std::vector<double> column_hours;            // evaluation point of each column
  std::vector<std::string> row_labels;
  std::vector<std::vector<std::optional<double>>> cells;  // empty where not defined
};

// Category tables hold b * g(T, c) with g shown to one decimal, the precision
// used by the printed bid tables. Comparison tables hold g(T, c) for T >= the
// category's prime interval. The 7-category "3h" column is evaluated at 4h.
BidTable render_table(TableKind kind);

// Two decimals at most, trailing zeros dropped.
std::string format_cell(double v);

std::string to_text(const BidTable& table);
std::string to_csv(const BidTable& table);

}  // namespace mrt::bids
