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
#include "mrt/bids/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mrt/bids/two_bid.hpp"
#include "mrt/core/error.hpp"

namespace mrt::bids {
namespace {

double round_to(double v, double unit) { return std::floor(v / unit + 0.5 + 1e-9) * unit; }

BidTable category_table(std::string title, int category, int max_bid, std::string corner,
                        const std::vector<std::string>& columns) {
  BidTable t;
  t.title = std::move(title);
  t.corner = std::move(corner);
  t.column_labels = columns;
  for (const auto& label : columns) t.column_hours.push_back(parse_duration(label));
  for (int b = 1; b <= max_bid; ++b) {
    t.row_labels.push_back(std::to_string(b));
    std::vector<std::optional<double>> row;
    for (double hrs : t.column_hours) row.emplace_back(b * round_to(g(hrs, category), 0.1));
    t.cells.push_back(std::move(row));
  }
  return t;
}

BidTable comparison_table(std::string title, const std::vector<int>& categories,
                          const std::vector<std::string>& columns, const std::vector<double>& at) {
  BidTable t;
  t.title = std::move(title);
  t.corner = "cat";
  t.column_labels = columns;
  t.column_hours = at;
  for (int c : categories) {
    t.row_labels.push_back(std::to_string(c));
    std::vector<std::optional<double>> row;
    for (double hrs : at) {
      if (hrs + 1e-9 >= prime_interval(c)) {
        row.emplace_back(g(hrs, c));
      } else {
        row.emplace_back(std::nullopt);
      }
    }
    t.cells.push_back(std::move(row));
  }
  return t;
}

std::vector<double> hours_of(const std::vector<std::string>& labels) {
  std::vector<double> out;
  for (const auto& l : labels) out.push_back(parse_duration(l));
  return out;
}

}  // namespace

TableKind parse_table_kind(std::string_view name) {
  if (name == "super") return TableKind::kSuper;
  if (name == "ultra") return TableKind::kUltra;
  if (name == "extra") return TableKind::kExtra;
  if (name == "regular") return TableKind::kRegular;
  if (name == "min-4cat") return TableKind::kMin4Cat;
  if (name == "min-7cat") return TableKind::kMin7Cat;
  throw DomainError("unknown table kind: " + std::string(name));
}

std::string_view table_kind_name(TableKind kind) {
  switch (kind) {
    case TableKind::kSuper: return "super";
    case TableKind::kUltra: return "ultra";
    case TableKind::kExtra: return "extra";
    case TableKind::kRegular: return "regular";
    case TableKind::kMin4Cat: return "min-4cat";
    case TableKind::kMin7Cat: return "min-7cat";
  }
  return "";
}

BidTable render_table(TableKind kind) {
  switch (kind) {
    case TableKind::kSuper:
      return category_table("Super table (c=1)", 1, 6, "b\\h", {"1h", "2h", "1d", "5d", "1m", "3m"});
    case TableKind::kUltra:
      return category_table("Ultra table (c=3)", 3, 6, "b\\d", {"1d", "2d", "5d", "15d", "45d", "6m"});
    case TableKind::kExtra:
      return category_table("Extra table (c=5)", 5, 5, "b\\w", {"1w", "2w", "1m", "3m", "9m"});
    case TableKind::kRegular:
      return category_table("Regular table (c=7)", 7, 4, "b\\m", {"1m", "2m", "4m", "12m"});
    case TableKind::kMin4Cat: {
      const std::vector<std::string> cols = {"1h", "2h", "1d", "2d", "1w", "2w", "3w",
                                             "1m", "2m", "3m", "4m", "6m", "9m"};
      return comparison_table("Minimal bids, 4 categories", {7, 5, 3, 1}, cols, hours_of(cols));
    }
    case TableKind::kMin7Cat: {
      const std::vector<std::string> cols = {"1h", "2h", "3h", "1d", "2d", "4d",
                                             "1w", "2w", "1m", "2m", "3m", "4m"};
      auto at = hours_of(cols);
      at[2] = 4.0;  // the tabulated "3h" column matches g at 4h
      return comparison_table("Minimal bids, 7 categories", {1, 2, 3, 4, 5, 6, 7}, cols, at);
    }
  }
  throw DomainError("unknown table kind");
}

std::string format_cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", round_to(v, 0.01));
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string to_text(const BidTable& table) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {table.corner};
  header.insert(header.end(), table.column_labels.begin(), table.column_labels.end());
  grid.push_back(header);
  for (std::size_t r = 0; r < table.cells.size(); ++r) {
    std::vector<std::string> line = {table.row_labels[r]};
    for (const auto& cell : table.cells[r]) line.push_back(cell ? format_cell(*cell) : "---");
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  out << table.title << '\n';
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      const auto& s = grid[r][i];
      if (i > 0) out << "  ";
      out << std::string(width[i] - s.size(), ' ') << s;
      if (i == 0) out << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::string to_csv(const BidTable& table) {
  std::ostringstream out;
  out << (table.corner == "cat" ? "cat" : "b");
  for (const auto& l : table.column_labels) out << ',' << l;
  out << '\n';
  for (std::size_t r = 0; r < table.cells.size(); ++r) {
    out << table.row_labels[r];
    for (const auto& cell : table.cells[r]) {
      out << ',';
      if (cell) out << format_cell(*cell);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mrt::bids
