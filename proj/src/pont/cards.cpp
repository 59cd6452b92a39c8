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

#include "mrt/pont/cards.hpp"

#include <cctype>

#include "mrt/core/error.hpp"

namespace mrt::pont {

namespace {
constexpr std::string_view kRankChars = "23456789TJQKA";
constexpr std::string_view kSuitChars = "CDHS";
}  // namespace

CardSet deck_mask(int size) {
  if (size == 52) return (CardSet{1} << 52) - 1;
  if (size != 36) throw DomainError("deck size must be 36 or 52");
  CardSet m = 0;
  for (int s = 0; s < kSuits; ++s) m |= suit_mask(static_cast<Suit>(s)) & ~(CardSet{0xF} << (s * kRanks));
  return m;
}

std::vector<Card> to_vector(CardSet set) {
  std::vector<Card> out;
  out.reserve(count(set));
  for (; set; set &= set - 1) out.push_back(lowest(set));
  return out;
}

CardSet to_set(const std::vector<Card>& cards) {
  CardSet m = 0;
  for (Card c : cards) m |= c.bit();
  return m;
}

char suit_char(Suit s) { return kSuitChars[static_cast<int>(s)]; }

Suit parse_suit(char c) {
  auto i = kSuitChars.find(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (i == std::string_view::npos) throw DomainError(std::string("bad suit '") + c + "'");
  return static_cast<Suit>(i);
}

std::string to_string(Card c) { return {kRankChars[c.rank()], suit_char(c.suit())}; }

std::string to_string(CardSet set) {
  std::string out;
  for (Card c : to_vector(set)) {
    if (!out.empty()) out += ' ';
    out += to_string(c);
  }
  return out;
}

Card parse_card(std::string_view s) {
  std::string_view r = s.substr(0, s.size() > 0 ? s.size() - 1 : 0);
  if (s.size() < 2 || s.size() > 3) throw DomainError("bad card '" + std::string(s) + "'");
  int rank = -1;
  if (r == "10") {
    rank = 8;
  } else if (r.size() == 1) {
    auto i = kRankChars.find(static_cast<char>(std::toupper(static_cast<unsigned char>(r[0]))));
    if (i != std::string_view::npos) rank = static_cast<int>(i);
  }
  if (rank < 0) throw DomainError("bad card '" + std::string(s) + "'");
  return Card(parse_suit(s.back()), rank);
}

CardSet parse_cards(std::string_view s) {
  CardSet m = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != ',') ++j;
    if (j > i) m |= parse_card(s.substr(i, j - i)).bit();
    i = j;
  }
  return m;
}

}  // namespace mrt::pont
