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
// Cards and card sets. A card is suit * 13 + rank with rank 0 = deuce and
// 12 = ace; a set of cards is a 64-bit mask.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mrt::pont {

using CardSet = std::uint64_t;

enum class Suit : std::uint8_t { kClubs, kDiamonds, kHearts, kSpades };
inline constexpr int kSuits = 4;
inline constexpr int kRanks = 13;

struct Card {
  std::uint8_t id = 0;

  constexpr Card() = default;
  constexpr explicit Card(int raw) : id(static_cast<std::uint8_t>(raw)) {}
  constexpr Card(Suit s, int rank) : id(static_cast<std::uint8_t>(static_cast<int>(s) * kRanks + rank)) {}

  constexpr Suit suit() const { return static_cast<Suit>(id / kRanks); }
  constexpr int rank() const { return id % kRanks; }
  constexpr CardSet bit() const { return CardSet{1} << id; }
  friend constexpr bool operator==(Card, Card) = default;
};

constexpr CardSet suit_mask(Suit s) { return CardSet{0x1FFF} << (static_cast<int>(s) * kRanks); }
constexpr bool contains(CardSet set, Card c) { return (set & c.bit()) != 0; }
inline int count(CardSet set) { return std::popcount(set); }
inline Card lowest(CardSet set) { return Card(std::countr_zero(set)); }
inline Card highest(CardSet set) { return Card(63 - std::countl_zero(set)); }

// 52 cards, or 36 from the six up.
CardSet deck_mask(int size);

std::vector<Card> to_vector(CardSet set);
CardSet to_set(const std::vector<Card>& cards);

// "AS", "TH", "6C"; "10H" is also accepted on input.
std::string to_string(Card c);
std::string to_string(CardSet set);  // space separated, by suit then rank
Card parse_card(std::string_view s);
CardSet parse_cards(std::string_view s);

char suit_char(Suit s);
Suit parse_suit(char c);

}  // namespace mrt::pont
