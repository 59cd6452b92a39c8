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

#include "mrt/pont/bot.hpp"

#include <algorithm>
#include <map>

#include "mrt/core/error.hpp"

namespace mrt::pont {

namespace {

struct View {
  int seat = 0;
  std::array<CardSet, 4> known{};  // own hand and face-up hands
  std::array<int, 4> hidden{};     // unseen cards held by each other seat
  CardSet unseen = 0;
};

View make_view(const GameState& g, int s) {
  View v;
  v.seat = s;
  CardSet seen = g.played() | g.discards(s);
  for (int t = 0; t < g.seats(); ++t) {
    v.known[t] = g.visible_hand(s, t);
    seen |= v.known[t];
    if (t != s && g.active(t)) v.hidden[t] = g.hand_count(t) - count(v.known[t]);
  }
  v.unseen = g.deck() & ~seen;
  return v;
}

// Deal the unseen cards to the other seats, respecting shown-out suits
// when that is possible.
std::array<CardSet, 4> sample(const View& v, const GameState& g, std::mt19937_64& rng) {
  std::vector<Card> cards = to_vector(v.unseen);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::shuffle(cards.begin(), cards.end(), rng);
    bool honor_voids = attempt < 7;
    auto hands = v.known;
    auto need = v.hidden;
    bool ok = true;
    for (Card c : cards) {
      int rest = 0;
      for (int t = 0; t < g.seats(); ++t) rest += need[t];
      if (rest == 0) break;
      int pick = -1;
      for (int i = 0; i < g.seats() && pick < 0; ++i) {
        int t = (c.id + i) % g.seats();
        if (need[t] > 0 && !(honor_voids && (g.voids(t) >> static_cast<int>(c.suit()) & 1u))) pick = t;
      }
      if (pick < 0) continue;  // stays in the stock
      hands[pick] |= c.bit();
      --need[pick];
    }
    for (int t = 0; t < g.seats(); ++t) ok = ok && need[t] == 0;
    if (ok) return hands;
  }
  // last resort: fill in order
  auto hands = v.known;
  auto need = v.hidden;
  for (Card c : cards)
    for (int t = 0; t < g.seats(); ++t)
      if (need[t] > 0) {
        hands[t] |= c.bit();
        --need[t];
        break;
      }
  return hands;
}

std::optional<Suit> trump_option(int i) {
  if (i < 0) return std::nullopt;
  return static_cast<Suit>(i);
}

struct Estimate {
  std::array<std::map<int, int>, 5> hist;  // per trump option (-1..3 -> 0..4)
  std::array<double, 5> mean{};
  std::map<int, int> best;  // best over the trump options, per sample
  double misere_safe = 0;  // fraction of samples
  int samples = 0;
};

Estimate estimate(const GameState& g, int s, std::mt19937_64& rng) {
  View v = make_view(g, s);
  Estimate e;
  e.samples = g.config().bot_samples;
  for (int k = 0; k < e.samples; ++k) {
    auto hands = sample(v, g, rng);
    int top = 0;
    for (int t = -1; t < kSuits; ++t) {
      int est = estimate_tricks(hands, g.seats(), s, trump_option(t), g.config());
      ++e.hist[t + 1][est];
      e.mean[t + 1] += est;
      top = std::max(top, est);
    }
    ++e.best[top];
    if (misere_safe(hands, g.seats(), s)) e.misere_safe += 1;
  }
  for (auto& m : e.mean) m /= e.samples;
  e.misere_safe /= e.samples;
  return e;
}

int mode_of(const std::map<int, int>& h) {
  int best = 0, n = -1;
  for (auto [k, c] : h)
    if (c > n) best = k, n = c;  // ties go to the smaller count
  return best;
}

int best_trump(const Estimate& e) {
  int best = 0;
  for (int i = 1; i < 5; ++i)
    if (e.mean[i] > e.mean[best] + 1e-12) best = i;
  return best;
}

// Most frequent highest bid over the samples, stepped down one level.
// Returns a rank on the scale or -1 for "no bid".
int target_rank(const GameConfig& scale_cfg, const Estimate& e, int cards) {
  auto scale = bid_scale(scale_cfg);
  std::map<int, int> ranks;
  for (auto [tricks, n] : e.best) {
    int r = -1;
    for (int i = 0; i < static_cast<int>(scale.size()); ++i)
      if (!scale[i].misere && min_tricks(scale[i], cards) <= tricks) r = i;
    ranks[r] += n;
  }
  int r = mode_of(ranks);
  if (r < 0) return -1;
  do --r;
  while (r >= 0 && scale[r].misere);
  return r;
}

bool wins_now(const GameState& g, Card c) {
  auto trick = g.current_trick();
  trick.push_back(c);
  return trick_winner(trick, g.trump()) == static_cast<int>(trick.size()) - 1;
}

int current_winner_seat(const GameState& g) {
  const auto& trick = g.current_trick();
  int w = trick_winner(trick, g.trump());
  int seat = g.leader();
  for (int i = 0; i < w; ++i) {
    do seat = (seat + 1) % g.seats();
    while (!g.active(seat));
  }
  return seat;
}

template <class Rng>
Card pick(std::vector<Card> cs, Rng& rng) {
  if (cs.empty()) throw DomainError("bot has no card to pick");
  std::uniform_int_distribution<std::size_t> d(0, cs.size() - 1);
  return cs[d(rng)];
}

// Lowest cards, preferring suits an opponent is void in, then the shortest suit.
Card discard_choice(const GameState& g, int s, CardSet legal, std::mt19937_64& rng) {
  unsigned opp_voids = 0;
  for (int t = 0; t < g.seats(); ++t)
    if (!g.config().same_side(t, s)) opp_voids |= g.voids(t);
  CardSet pool = 0;
  for (int u = 0; u < kSuits; ++u)
    if (opp_voids >> u & 1u) pool |= legal & suit_mask(static_cast<Suit>(u));
  if (!pool) pool = legal;
  int lo = 99;
  for (Card c : to_vector(pool)) lo = std::min(lo, c.rank());
  std::vector<Card> cands;
  int shortest = 99;
  for (Card c : to_vector(pool))
    if (c.rank() == lo) shortest = std::min(shortest, count(g.hand(s) & suit_mask(c.suit())));
  for (Card c : to_vector(pool))
    if (c.rank() == lo && count(g.hand(s) & suit_mask(c.suit())) == shortest) cands.push_back(c);
  return pick(cands, rng);
}

Card lead_choice(const GameState& g, int s, CardSet legal, std::mt19937_64& rng) {
  CardSet hand = g.hand(s);
  unsigned opp_voids = 0;
  for (int t = 0; t < g.seats(); ++t)
    if (!g.config().same_side(t, s) && g.active(t)) opp_voids |= g.voids(t);
  std::vector<Card> cands;
  for (int u = 0; u < kSuits; ++u) {
    CardSet in = legal & suit_mask(static_cast<Suit>(u));
    if (in && (opp_voids >> u & 1u) && !(g.trump() && *g.trump() == static_cast<Suit>(u))) cands.push_back(lowest(in));
  }
  if (!cands.empty()) return pick(cands, rng);
  auto top_two_adjacent = [&](CardSet in) {
    if (count(in) < 2) return false;
    Card hi = highest(in);
    Card nx = highest(in & ~hi.bit());
    return hi.rank() - nx.rank() == 1;
  };
  for (int u = 0; u < kSuits; ++u) {
    CardSet in = legal & suit_mask(static_cast<Suit>(u));
    if (count(in) < 2) continue;
    Card hi = highest(in);
    Card nx = highest(in & ~hi.bit());
    int gap = hi.rank() - nx.rank();
    if (gap == 1 || gap >= 4) cands.push_back(hi);
  }
  if (!cands.empty()) return pick(cands, rng);
  int longest = 0;
  for (int u = 0; u < kSuits; ++u) longest = std::max(longest, count(legal & suit_mask(static_cast<Suit>(u))));
  for (int u = 0; u < kSuits; ++u) {
    CardSet in = legal & suit_mask(static_cast<Suit>(u));
    if (count(in) == longest && top_two_adjacent(in)) cands.push_back(highest(in));
  }
  if (cands.empty())
    for (int u = 0; u < kSuits; ++u) {
      CardSet in = legal & suit_mask(static_cast<Suit>(u));
      if (count(in) == longest) cands.push_back(highest(in));
    }
  (void)hand;
  return pick(cands, rng);
}

// Highest card that does not take the trick, or the highest of all.
Card duck_choice(const GameState& g, CardSet legal) {
  std::vector<Card> cs = to_vector(legal);
  std::optional<Card> best;
  for (Card c : cs)
    if (!g.current_trick().empty() && !wins_now(g, c) && (!best || c.rank() > best->rank())) best = c;
  if (best) return *best;
  if (g.current_trick().empty()) {
    Card lo = cs.front();
    for (Card c : cs)
      if (c.rank() < lo.rank()) lo = c;
    return lo;
  }
  Card hi = cs.front();
  for (Card c : cs)
    if (c.rank() > hi.rank()) hi = c;
  return hi;
}

Action find(const std::vector<Action>& acts, ActionType t) {
  for (const auto& a : acts)
    if (a.type == t) return a;
  throw DomainError("bot wanted an unavailable action");
}

bool has(const std::vector<Action>& acts, ActionType t) {
  return std::any_of(acts.begin(), acts.end(), [&](const Action& a) { return a.type == t; });
}

Action play_action(const GameState& g, int s, const std::vector<Action>& acts, std::mt19937_64& rng) {
  // show the partner's hand after the first trick
  if (has(acts, ActionType::kExpose) && !g.tricks().empty()) return find(acts, ActionType::kExpose);
  CardSet legal = 0;
  for (const auto& a : acts)
    if (a.type == ActionType::kPlay) legal |= a.card.bit();
  Action out;
  out.type = ActionType::kPlay;
  out.seat = s;
  const auto& c = g.contract();
  bool avoid = g.downplay() || (c && c->misere && s == g.declarer());
  bool feed = c && c->misere && s != g.declarer();
  if (avoid) {
    out.card = duck_choice(g, legal);
  } else if (feed) {
    // lead low, and never overtake a declarer card that is winning
    if (!g.current_trick().empty() && current_winner_seat(g) == g.declarer()) {
      out.card = duck_choice(g, legal);
    } else {
      std::vector<Card> cs = to_vector(legal);
      out.card = *std::min_element(cs.begin(), cs.end(), [](Card a, Card b) { return a.rank() < b.rank(); });
    }
  } else if (g.current_trick().empty()) {
    out.card = lead_choice(g, s, legal, rng);
  } else if (g.config().partnerships && g.config().same_side(current_winner_seat(g), s)) {
    out.card = discard_choice(g, s, legal, rng);
  } else {
    std::optional<Card> win;
    for (Card x : to_vector(legal)) {
      if (!wins_now(g, x)) continue;
      bool x_trump = g.trump() && x.suit() == *g.trump();
      bool w_trump = win && g.trump() && win->suit() == *g.trump();
      if (!win || (w_trump && !x_trump) || (w_trump == x_trump && x.rank() < win->rank())) win = x;
    }
    out.card = win ? *win : discard_choice(g, s, legal, rng);
  }
  return out;
}

Action bid_action(const GameState& g, int s, const std::vector<Action>& acts, std::mt19937_64& rng) {
  GameConfig scale_cfg = g.config();
  if (g.phase() == Phase::kTieBid) scale_cfg.variant = Variant::kBasic;
  auto scale = bid_scale(scale_cfg);
  Estimate e = estimate(g, s, rng);
  int target = target_rank(scale_cfg, e, 6);
  int misere_rank = -1;
  for (int i = 0; i < static_cast<int>(scale.size()); ++i)
    if (scale[i].misere) misere_rank = i;
  bool want_misere = misere_rank >= 0 && g.upgrades() == 0 && e.misere_safe >= 0.6;

  int cur = g.max_bid() ? bid_rank(scale_cfg, *g.max_bid()) : -1;
  if (has(acts, ActionType::kClose)) return find(acts, ActionType::kClose);
  std::vector<Action> bids;
  for (const auto& a : acts)
    if (a.type == ActionType::kBid) bids.push_back(a);
  bool closing = g.phase() == Phase::kAuction && g.closer() >= 0;
  if (closing) {
    if (!bids.empty() && (target >= cur || (want_misere && misere_rank == cur))) return bids.front();
    return find(acts, ActionType::kPass);
  }
  if (want_misere)
    for (const auto& a : bids)
      if (a.bid.misere) return a;
  const Action* equal = nullptr;
  for (const auto& a : bids) {
    int r = bid_rank(scale_cfg, a.bid);
    if (a.bid.misere || r > target) continue;
    if (r > cur) return a;
    if (r == cur && !equal) equal = &a;
  }
  if (equal) return *equal;
  if (has(acts, ActionType::kPass)) return find(acts, ActionType::kPass);
  for (const auto& a : bids)
    if (!a.bid.misere) return a;
  return bids.front();
}

Action contract_action(const GameState& g, int s, const std::vector<Action>& acts, std::mt19937_64& rng) {
  Estimate e = estimate(g, s, rng);
  int bt = best_trump(e);
  int mode = mode_of(e.hist[bt]);
  int cards = g.cards_per_hand();
  bool poker = g.config().variant == Variant::kPoker;
  if (has(acts, ActionType::kIncrease)) {
    int need_next;
    if (poker) {
      need_next = poker_min_tricks(cards + 1, g.seats() == 2);
      if (g.winning_bid()) need_next = std::max(need_next, min_tricks(*g.winning_bid(), cards + 1));
    } else {
      need_next = min_tricks(*g.winning_bid(), cards + 1);
    }
    if (mode - 1 >= need_next) return find(acts, ActionType::kIncrease);
  }
  int lo = 99;
  for (const auto& a : acts)
    if (a.type == ActionType::kDeclare && !a.misere) lo = std::min(lo, a.tricks);
  bool misere_possible = std::any_of(acts.begin(), acts.end(), [](const Action& a) { return a.misere; });
  if (misere_possible && e.misere_safe >= 0.6 && (g.winning_bid()->misere || mode - 1 < lo))
    for (const auto& a : acts)
      if (a.misere) return a;
  int want = std::clamp(mode - 1, lo, cards);
  for (const auto& a : acts)
    if (a.type == ActionType::kDeclare && !a.misere && a.tricks == want && a.trump == trump_option(bt - 1)) return a;
  for (const auto& a : acts)
    if (a.type == ActionType::kDeclare && !a.misere) return a;
  return acts.front();
}

Action poker_bet_action(const GameState& g, int s, const std::vector<Action>& acts, std::mt19937_64& rng) {
  Estimate e = estimate(g, s, rng);
  int margin = mode_of(e.hist[best_trump(e)]) - poker_min_tricks(6, g.seats() == 2);
  if (margin >= 1 && g.bet(s) < 2 * margin && has(acts, ActionType::kRaise)) return find(acts, ActionType::kRaise);
  if (margin >= 0) {
    if (has(acts, ActionType::kCall)) return find(acts, ActionType::kCall);
    if (has(acts, ActionType::kRaise)) return find(acts, ActionType::kRaise);
  }
  if (has(acts, ActionType::kPass)) return find(acts, ActionType::kPass);
  return find(acts, ActionType::kCall);
}

}  // namespace

int estimate_tricks(const std::array<CardSet, 4>& hands, int seats, int seat, std::optional<Suit> trump,
                    const GameConfig& cfg) {
  int total = 0;
  for (int u = 0; u < kSuits; ++u) {
    Suit su = static_cast<Suit>(u);
    CardSet mine = hands[seat] & suit_mask(su);
    if (!mine) continue;
    CardSet opp = 0;
    int opp_len_max = 0;
    int ruff_cap = 99;
    for (int t = 0; t < seats; ++t) {
      if (cfg.same_side(t, seat)) continue;
      CardSet in = hands[t] & suit_mask(su);
      opp |= in;
      opp_len_max = std::max(opp_len_max, count(in));
      if (trump && *trump != su && (hands[t] & suit_mask(*trump))) ruff_cap = std::min(ruff_cap, count(in));
    }
    int masters = 0;
    int top_opp = opp ? highest(opp).rank() : -1;
    for (Card c : to_vector(mine))
      if (c.rank() > top_opp) ++masters;
    int tricks;
    if (trump && *trump == su) tricks = std::max(masters, count(mine) - opp_len_max);
    else tricks = std::min(masters, ruff_cap);
    total += tricks;
  }
  return std::min(total, count(hands[seat]));
}

bool misere_safe(const std::array<CardSet, 4>& hands, int seats, int seat) {
  for (int u = 0; u < kSuits; ++u) {
    CardSet m = suit_mask(static_cast<Suit>(u));
    auto mine = to_vector(hands[seat] & m);
    CardSet others = 0;
    for (int t = 0; t < seats; ++t)
      if (t != seat) others |= hands[t] & m;
    auto theirs = to_vector(others);
    for (std::size_t i = 0; i < std::min(mine.size(), theirs.size()); ++i)
      if (mine[i].rank() > theirs[i].rank()) return false;
  }
  return true;
}

Action bot_action(const GameState& g, std::uint64_t seed) {
  if (g.over()) throw DomainError("game is over");
  int s = g.to_act();
  std::mt19937_64 rng(seed);
  auto acts = g.legal_actions();
  if (acts.empty()) throw DomainError("no legal action");
  switch (g.phase()) {
    case Phase::kAuction:
    case Phase::kTieBid:
      return bid_action(g, s, acts, rng);
    case Phase::kUpgrade: {
      Action a = acts.front();
      a.card = discard_choice(g, s, g.hand(s), rng);
      return a;
    }
    case Phase::kPokerUpgrade: {
      if (has(acts, ActionType::kDiscard)) {
        Action a = find(acts, ActionType::kDiscard);
        a.card = discard_choice(g, s, g.hand(s), rng);
        return a;
      }
      Estimate e = estimate(g, s, rng);
      int margin = mode_of(e.hist[best_trump(e)]) - poker_min_tricks(6, g.seats() == 2);
      return find(acts, margin < 0 ? ActionType::kUpgrade : ActionType::kSkip);
    }
    case Phase::kContract:
      return contract_action(g, s, acts, rng);
    case Phase::kBetting:
      return poker_bet_action(g, s, acts, rng);
    case Phase::kRespond: {
      int cost = g.cards_per_hand() - 6;
      bool ace = false;
      for (Card c : to_vector(g.hand(s))) ace = ace || c.rank() == 12;
      return find(acts, cost == 0 || ace ? ActionType::kRespond : ActionType::kPass);
    }
    case Phase::kPlay:
      return play_action(g, s, acts, rng);
    case Phase::kOver:
      break;
  }
  throw DomainError("no bot action");
}

}  // namespace mrt::pont
