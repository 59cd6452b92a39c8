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
// The computer player. Bidding and declaring sample the unseen cards,
// take the most frequent best bid and step it down one level; the play
// follows simple rules (smallest winning card, lowest otherwise).

#pragma once

#include <cstdint>
#include <random>

#include "mrt/pont/game.hpp"

namespace mrt::pont {

// Acts for g.to_act() using only what that seat may see. Same state and
// seed give the same action.
Action bot_action(const GameState& g, std::uint64_t seed);

// Sure-trick count of `seat` with the given hands; exposed for tests.
int estimate_tricks(const std::array<CardSet, 4>& hands, int seats, int seat, std::optional<Suit> trump,
                    const GameConfig& cfg);

// Rough misere safety: in every suit the holder's i-th lowest card is
// below the i-th lowest card the others hold there, as far as theirs go.
bool misere_safe(const std::array<CardSet, 4>& hands, int seats, int seat);

}  // namespace mrt::pont
