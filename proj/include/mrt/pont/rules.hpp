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
// Pont rules that do not need a running game: configuration, the bid
// scale, minimal contracts, card legality, trick resolution and scoring.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrt/pont/cards.hpp"

namespace mrt::pont {

enum class Variant { kFull, kBasic, kPoker };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

struct GameConfig {
  int players = 3;            // seats at the table, 2..4
  bool partnerships = false;  // 4 seats as two teams, 0+2 against 1+3
  Variant variant = Variant::kFull;
  int deck = 0;               // 0 picks 36 or 52 from the seat count
  std::uint64_t seed = 1;
  bool strict_scoring = false;  // failed contracts pay value * missed tricks
  int bot_samples = 64;
  // poker only
  int ante = 1;
  int max_raise = 2;  // chips per raise
  int bet_cap = 6;    // per player per game, keeps betting finite

  int deck_size() const { return deck != 0 ? deck : (players == 4 ? 52 : 36); }
  // Two players or two teams score and bid the same way.
  bool two_sided() const { return players == 2 || partnerships; }
  int partner(int seat) const { return partnerships ? (seat + 2) % 4 : -1; }
  bool same_side(int a, int b) const { return a == b || (partnerships && (a + b) % 2 == 0 && a != b); }
  void validate() const;
};

struct PontBid {
  int n = 0;
  int d = 0;
  bool misere = false;

  static PontBid make_misere() { return {0, 6, true}; }
  double value() const { return static_cast<double>(n) / d; }
  friend bool operator==(const PontBid&, const PontBid&) = default;
};

std::string to_string(const PontBid& b);  // "5/7", "m"
PontBid parse_bid(std::string_view s);

// All admissible bids for the configuration in increasing order.
std::vector<PontBid> bid_scale(const GameConfig& cfg);
// Position on the scale, or -1 when the bid is not admissible.
int bid_rank(const GameConfig& cfg, const PontBid& b);
// "2+1" for 5/7 with three players, "m" for misere.
std::string bid_name(const PontBid& b, bool two_sided);

// Tricks the declarer must contract for with `cards` in hand after the
// last increase. A misere bid played as a normal contract counts as 5/6,
// except with 6 cards where only 6/6 replaces it.
int min_tricks(const PontBid& b, int cards);

// Poker has a fixed minimal contract for the hand size.
int poker_min_tricks(int cards, bool two_players);

// Cards the holder may play. `led` is empty when leading.
CardSet legal_cards(CardSet hand, std::optional<Suit> led, std::optional<Suit> trump, bool may_lead_trump);

// Index into the trick (0 = leader) of the winning card.
int trick_winner(const std::vector<Card>& trick, std::optional<Suit> trump);

struct Contract {
  int declarer = -1;
  std::optional<Suit> trump;  // empty = notrump
  int tricks = 0;
  int cards = 6;
  bool misere = false;
};

std::string contract_string(const Contract& c);

struct ScoreContext {
  bool two_sided = false;
  Variant variant = Variant::kFull;
  bool strict = false;
  bool premium = false;  // declarer's last bid of the first round qualified
};

struct ScoreBreakdown {
  int value = 0;
  int premium = 0;
  int bonus = 0;
  bool made = false;
  int missed = 0;
  double delta = 0;  // applied to the declarer
};

// `taken` counts the declarer side's tricks.
ScoreBreakdown score_contract(const Contract& c, int taken, const ScoreContext& ctx);

// Downplay: every side loses its tricks above the smallest count, halved
// when there are two sides. Deltas are per side.
std::vector<double> score_downplay(const std::vector<int>& side_tricks, bool two_sided);

// Scores minus their mean; with partnerships the team total is then split
// so that a positive partner never pays and a negative one never receives.
std::vector<double> rewards(const std::vector<double>& scores, bool partnerships);

// Poker failure: the active opponents share `pool` in proportion to their
// tricks, rounding down; what is left over goes back to the pot.
struct PoolSplit {
  std::vector<int> shares;
  int remainder = 0;
};
PoolSplit split_pool(int pool, const std::vector<int>& tricks);

// A last bid of 5/6 or more (or misere) before the first upgrade.
bool premium_bid(const GameConfig& cfg, const PontBid& b);

}  // namespace mrt::pont
