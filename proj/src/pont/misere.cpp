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

#include "mrt/pont/misere.hpp"

#include <unordered_map>

#include "mrt/core/error.hpp"
#include "mrt/pont/rules.hpp"

namespace mrt::pont {

namespace {

struct Key {
  std::array<CardSet, 4> hands;
  std::uint32_t trick;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = k.trick * 0x9E3779B97F4A7C15ULL;
    for (CardSet m : k.hands) h = (h ^ m) * 0x100000001B3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

class Solver {
 public:
  Solver(const OpenPosition& p, std::uint64_t budget) : p_(p), budget_(budget) {}

  bool solve() {
    std::vector<Card> trick = p_.trick;
    auto hands = p_.hands;
    return search(hands, p_.leader, trick);
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  int next(int seat) const {
    do seat = (seat + 1) % p_.seats;
    while (!p_.active[seat]);
    return seat;
  }
  int active_count() const {
    int n = 0;
    for (int s = 0; s < p_.seats; ++s) n += p_.active[s];
    return n;
  }

  bool search(std::array<CardSet, 4>& hands, int leader, std::vector<Card>& trick) {
    if (++nodes_ > budget_) throw SearchLimitExceeded("misere search exceeded " + std::to_string(budget_) + " nodes");
    if (static_cast<int>(trick.size()) == active_count()) {
      int w = trick_winner(trick, std::nullopt);
      int seat = leader;
      for (int i = 0; i < w; ++i) seat = next(seat);
      if (seat == p_.declarer) return true;
      std::vector<Card> fresh;
      return search(hands, seat, fresh);
    }
    bool empty = true;
    for (int s = 0; s < p_.seats; ++s) empty = empty && (!p_.active[s] || hands[s] == 0);
    if (empty) return false;

    Key key{hands, static_cast<std::uint32_t>(leader)};
    for (Card c : trick) key.trick = key.trick * 64 + c.id + 1;
    key.trick = key.trick * 4 + static_cast<std::uint32_t>(trick.size());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    int seat = leader;
    for (std::size_t i = 0; i < trick.size(); ++i) seat = next(seat);
    std::optional<Suit> led;
    if (!trick.empty()) led = trick.front().suit();
    CardSet legal = legal_cards(hands[seat], led, std::nullopt, true);
    bool adversary = seat != p_.declarer;
    bool result = !adversary;
    for (CardSet m = legal; m; m &= m - 1) {
      Card c = lowest(m);
      hands[seat] &= ~c.bit();
      trick.push_back(c);
      bool r = search(hands, leader, trick);
      trick.pop_back();
      hands[seat] |= c.bit();
      if (adversary && r) { result = true; break; }
      if (!adversary && !r) { result = false; break; }
    }
    memo_.emplace(key, result);
    return result;
  }

  const OpenPosition& p_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace

bool misere_defeated(const OpenPosition& pos, std::uint64_t node_budget, std::uint64_t* nodes) {
  if (pos.seats < 2 || pos.seats > 4) throw DomainError("misere position needs 2..4 seats");
  if (!pos.active[pos.declarer]) throw DomainError("declarer must be active");
  Solver s(pos, node_budget);
  bool r = s.solve();
  if (nodes) *nodes = s.nodes();
  return r;
}

}  // namespace mrt::pont
