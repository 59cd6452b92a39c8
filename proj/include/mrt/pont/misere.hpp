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
// Exact open-hand solver for misere: can the opponents, cooperating and
// seeing every card, force the declarer to take a trick?

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mrt/pont/cards.hpp"

namespace mrt::pont {

class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OpenPosition {
  int seats = 3;
  std::array<CardSet, 4> hands{};
  std::array<bool, 4> active{true, true, true, true};  // a misere partner sits out
  int declarer = 0;
  int leader = 0;
  std::vector<Card> trick;  // cards already played to the current trick
};

inline constexpr std::uint64_t kMisereNodeBudget = 10'000'000;

// Throws SearchLimitExceeded once more than `node_budget` positions are
// expanded; the verdict is never guessed.
bool misere_defeated(const OpenPosition& pos, std::uint64_t node_budget = kMisereNodeBudget,
                     std::uint64_t* nodes = nullptr);

}  // namespace mrt::pont
