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

#include "mrt/pont/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrt/core/error.hpp"

namespace mrt::pont {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kBasic: return "basic";
    case Variant::kPoker: return "poker";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  if (s == "full") return Variant::kFull;
  if (s == "basic") return Variant::kBasic;
  if (s == "poker") return Variant::kPoker;
  throw DomainError("unknown variant '" + std::string(s) + "'");
}

void GameConfig::validate() const {
  if (players < 2 || players > 4) throw DomainError("players must be 2, 3 or 4");
  if (partnerships && players != 4) throw DomainError("partnerships need 4 seats");
  if (partnerships && variant == Variant::kPoker) throw DomainError("poker is for individual players");
  int want = players == 4 ? 52 : 36;
  if (deck != 0 && deck != want) throw DomainError("deck must be " + std::to_string(want) + " cards for " + std::to_string(players) + " players");
  if (bot_samples < 1) throw DomainError("bot_samples must be positive");
  if (ante < 0 || max_raise < 1 || bet_cap < 1) throw DomainError("bad poker chip settings");
}

std::string to_string(const PontBid& b) {
  if (b.misere) return "m";
  return std::to_string(b.n) + "/" + std::to_string(b.d);
}

PontBid parse_bid(std::string_view s) {
  if (s == "m" || s == "misere" || s == "m/6") return PontBid::make_misere();
  auto slash = s.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 >= s.size()) throw DomainError("bad bid '" + std::string(s) + "'");
  auto num = [&](std::string_view t) {
    if (t.size() != 1 || t[0] < '0' || t[0] > '9') throw DomainError("bad bid '" + std::string(s) + "'");
    return t[0] - '0';
  };
  return {num(s.substr(0, slash)), num(s.substr(slash + 1)), false};
}

std::vector<PontBid> bid_scale(const GameConfig& cfg) {
  // Every N/D with D in 6..8, N <= D, at least 3/6, minus 4/8, 7/7, 8/8.
  std::vector<PontBid> all;
  for (int d = 6; d <= 8; ++d)
    for (int n = 1; n <= d; ++n) {
      PontBid b{n, d, false};
      if (n * 6 < 3 * d) continue;
      if ((n == 4 && d == 8) || (n == 7 && d == 7) || (n == 8 && d == 8)) continue;
      all.push_back(b);
    }
  std::stable_sort(all.begin(), all.end(), [](const PontBid& a, const PontBid& b) { return a.n * b.d < b.n * a.d; });

  bool two = cfg.two_sided();
  bool basic = cfg.variant != Variant::kFull;
  std::vector<PontBid> out;
  for (const auto& b : all) {
    if (two && b.n * 6 < 4 * b.d) continue;
    if (basic && b.d == 8) continue;
    // misere is bitten by 5/6 with 3-4 players and by 6/7 with two sides
    if (!basic && ((!two && b == PontBid{5, 6}) || (two && b == PontBid{6, 7}))) out.push_back(PontBid::make_misere());
    out.push_back(b);
  }
  return out;
}

int bid_rank(const GameConfig& cfg, const PontBid& b) {
  auto scale = bid_scale(cfg);
  auto it = std::find(scale.begin(), scale.end(), b);
  return it == scale.end() ? -1 : static_cast<int>(it - scale.begin());
}

std::string bid_name(const PontBid& b, bool two_sided) {
  if (b.misere) return "m";
  int extra = b.d - 6;
  int base = b.n - extra - (two_sided ? 3 : 2);
  std::string s = std::to_string(base);
  if (extra > 0) s += "+" + std::to_string(extra);
  return s;
}

int min_tricks(const PontBid& b, int cards) {
  if (cards < 6 || cards > 9) throw DomainError("cards per hand must be 6..9");
  if (b.misere) return cards == 6 ? 6 : (5 * cards + 5) / 6;
  return (cards * b.n + b.d - 1) / b.d;
}

int poker_min_tricks(int cards, bool two_players) {
  switch (cards) {
    case 6: return two_players ? 4 : 3;
    case 7: return two_players ? 5 : 4;
    case 8:
    case 9: return 6;
  }
  throw DomainError("cards per hand must be 6..9");
}

CardSet legal_cards(CardSet hand, std::optional<Suit> led, std::optional<Suit> trump, bool may_lead_trump) {
  if (!led) {
    if (trump && !may_lead_trump) {
      CardSet rest = hand & ~suit_mask(*trump);
      if (rest) return rest;
    }
    return hand;
  }
  if (CardSet follow = hand & suit_mask(*led)) return follow;
  if (trump) {
    if (CardSet t = hand & suit_mask(*trump)) return t;
  }
  return hand;
}

int trick_winner(const std::vector<Card>& trick, std::optional<Suit> trump) {
  if (trick.empty()) throw DomainError("empty trick");
  int best = 0;
  for (int i = 1; i < static_cast<int>(trick.size()); ++i) {
    Card a = trick[best], c = trick[i];
    bool c_trump = trump && c.suit() == *trump;
    bool a_trump = trump && a.suit() == *trump;
    if (c_trump && !a_trump) best = i;
    else if (c.suit() == a.suit() && c.rank() > a.rank()) best = i;
  }
  return best;
}

std::string contract_string(const Contract& c) {
  if (c.misere) return "misere";
  std::string s = std::to_string(c.tricks) + "/" + std::to_string(c.cards) + " ";
  s += c.trump ? std::string(1, suit_char(*c.trump)) : std::string("NT");
  return s;
}

PoolSplit split_pool(int pool, const std::vector<int>& tricks) {
  PoolSplit out;
  int total = std::accumulate(tricks.begin(), tricks.end(), 0);
  int paid = 0;
  for (int t : tricks) {
    int share = total > 0 ? pool * t / total : 0;
    out.shares.push_back(share);
    paid += share;
  }
  out.remainder = pool - paid;
  return out;
}

bool premium_bid(const GameConfig& cfg, const PontBid& b) {
  if (cfg.variant != Variant::kFull) return false;
  return b.misere || b.n * 6 >= 5 * b.d;
}

ScoreBreakdown score_contract(const Contract& c, int taken, const ScoreContext& ctx) {
  ScoreBreakdown s;
  int k = ctx.two_sided ? 3 : 2;
  s.value = (c.misere ? 5 : c.tricks) - k;
  s.premium = ctx.premium && ctx.variant == Variant::kFull ? 1 : 0;
  if (c.misere) {
    s.made = taken == 0;
    s.missed = taken;
  } else {
    s.made = taken >= c.tricks;
    s.missed = std::max(0, c.tricks - taken);
  }
  if (s.made) {
    if (ctx.variant != Variant::kPoker) {
      if (!c.misere && c.tricks == c.cards) s.bonus = ctx.two_sided ? 1 : 2;
      else if (!ctx.two_sided && (c.misere || c.tricks == c.cards - 1)) s.bonus = 1;
    }
    s.delta = s.value + s.premium + s.bonus;
  } else {
    int base = s.value + s.premium;
    s.delta = -(ctx.strict ? base * std::max(1, s.missed) : base);
  }
  return s;
}

std::vector<double> score_downplay(const std::vector<int>& side_tricks, bool two_sided) {
  if (side_tricks.empty()) return {};
  int lo = *std::min_element(side_tricks.begin(), side_tricks.end());
  std::vector<double> out;
  for (int t : side_tricks) {
    double d = t - lo;
    if (two_sided) d /= 2;
    out.push_back(d == 0 ? 0.0 : -d);
  }
  return out;
}

std::vector<double> rewards(const std::vector<double>& scores, bool partnerships) {
  if (scores.size() < 2) throw DomainError("rewards need two or more seats");
  double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / scores.size();
  std::vector<double> r;
  for (double s : scores) r.push_back(s - mean);
  if (partnerships) {
    if (r.size() != 4) throw DomainError("partnership rewards need 4 seats");
    for (int a = 0; a < 2; ++a) {
      int b = a + 2;
      double total = r[a] + r[b];
      if ((r[a] > 0) == (r[b] > 0) || r[a] == 0 || r[b] == 0) continue;
      int pos = r[a] > 0 ? a : b, neg = pos == a ? b : a;
      if (total < 0) {
        r[pos] = 0;
        r[neg] = total;
      } else {
        r[pos] = total;
        r[neg] = 0;
      }
    }
  }
  return r;
}

}  // namespace mrt::pont
