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

#include "mrt/pont/game.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mrt/core/error.hpp"

namespace mrt::pont {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform below n by rejection; std distributions differ between
// standard libraries and the deal must replay anywhere.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

constexpr std::array<std::string_view, 9> kPhaseNames = {
    "auction", "upgrade", "contract", "play", "betting", "poker-upgrade", "tie-bid", "respond", "over"};
constexpr std::array<std::string_view, 13> kActionNames = {
    "bid", "pass", "close", "discard", "increase", "declare", "expose", "play",
    "raise", "call", "upgrade", "skip", "respond"};

}  // namespace

std::string_view to_string(Phase p) { return kPhaseNames[static_cast<int>(p)]; }
std::string_view to_string(ActionType t) { return kActionNames[static_cast<int>(t)]; }

ActionType parse_action_type(std::string_view s) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i)
    if (kActionNames[i] == s) return static_cast<ActionType>(i);
  throw IllegalAction("unknown action '" + std::string(s) + "'");
}

std::string_view to_string(GameResult::Kind k) {
  switch (k) {
    case GameResult::Kind::kContract: return "contract";
    case GameResult::Kind::kMisere: return "misere";
    case GameResult::Kind::kDownplay: return "downplay";
    case GameResult::Kind::kNoGame: return "no-game";
  }
  return "?";
}

std::string describe(const Action& a) {
  std::string s = "seat " + std::to_string(a.seat) + " " + std::string(to_string(a.type));
  switch (a.type) {
    case ActionType::kBid: s += " " + to_string(a.bid); break;
    case ActionType::kDiscard:
    case ActionType::kPlay: s += " " + to_string(a.card); break;
    case ActionType::kRaise: s += " " + std::to_string(a.amount); break;
    case ActionType::kDeclare:
      if (a.misere) s += " misere";
      else s += " " + std::to_string(a.tricks) + " " + (a.trump ? std::string(1, suit_char(*a.trump)) : std::string("NT"));
      break;
    default: break;
  }
  return s;
}

GameState::GameState(const GameConfig& cfg, int dealer, std::uint64_t game_index, int pot)
    : cfg_(cfg), dealer_(dealer), pot_(pot), pot_start_(pot) {
  cfg_.validate();
  if (dealer < 0 || dealer >= cfg_.players) throw DomainError("dealer out of range");
  std::mt19937_64 rng(splitmix(cfg_.seed ^ splitmix(game_index + 1)));
  order_ = to_vector(deck_mask(cfg_.deck_size()));
  for (std::size_t i = order_.size() - 1; i > 0; --i) std::swap(order_[i], order_[below(rng, i + 1)]);
  deal_start();
}

GameState::GameState(const GameConfig& cfg, int dealer, const std::vector<Card>& top, int pot)
    : cfg_(cfg), dealer_(dealer), pot_(pot), pot_start_(pot) {
  cfg_.validate();
  if (dealer < 0 || dealer >= cfg_.players) throw DomainError("dealer out of range");
  CardSet rest = deck_mask(cfg_.deck_size());
  for (Card c : top) {
    if (!contains(rest, c)) throw DomainError("stacked card " + to_string(c) + " is repeated or not in the deck");
    rest &= ~c.bit();
    order_.push_back(c);
  }
  for (Card c : to_vector(rest)) order_.push_back(c);
  deal_start();
}

void GameState::deal_start() {
  for (int r = 0; r < 6; ++r)
    for (int i = 1; i <= seats(); ++i) hands_[(dealer_ + i) % seats()] |= order_[next_card_++].bit();
  if (cfg_.variant == Variant::kPoker) poker_start();
  else start_round(dealer_, false);
}

int GameState::controller(int seat) const {
  if (exposed_ && seat == cfg_.partner(declarer_)) return declarer_;
  return seat;
}

int GameState::next_active(int s) const {
  do s = next_seat(s);
  while (!active_[s]);
  return s;
}

CardSet GameState::stock() const {
  CardSet m = 0;
  for (std::size_t i = next_card_; i < order_.size(); ++i) m |= order_[i].bit();
  return m;
}

bool GameState::cards_conserved() const {
  CardSet seen = 0;
  auto add = [&](CardSet m) {
    if (seen & m) return false;
    seen |= m;
    return true;
  };
  for (int s = 0; s < seats(); ++s)
    if (!add(hands_[s]) || !add(discards_[s])) return false;
  if (!add(played_) || !add(stock())) return false;
  return seen == deck();
}

CardSet GameState::visible_hand(int viewer, int seat) const {
  if (viewer == seat) return hands_[seat] & ~pending_[seat];
  if (misere_open_ && active_[seat]) return hands_[seat];
  if (exposed_ && seat == cfg_.partner(declarer_)) return hands_[seat];
  return 0;
}

int GameState::side_tricks(int seat) const {
  int t = tricks_won_[seat];
  if (cfg_.partnerships) t += tricks_won_[cfg_.partner(seat)];
  return t;
}

std::optional<Suit> GameState::trump() const {
  if (contract_ && !contract_->misere) return contract_->trump;
  return std::nullopt;
}

int GameState::required_tricks() const {
  int t = poker_min_tricks(cards_, cfg_.players == 2);
  if (win_bid_) t = std::max(t, min_tricks(*win_bid_, cards_));
  return t;
}

OpenPosition GameState::open_position() const {
  OpenPosition p;
  p.seats = seats();
  for (int s = 0; s < seats(); ++s) {
    p.hands[s] = hands_[s];
    p.active[s] = active_[s];
  }
  p.declarer = declarer_ >= 0 ? declarer_ : leader_;
  p.leader = leader_;
  p.trick = trick_;
  return p;
}

void GameState::deal_round(bool to_pending) {
  for (int i = 1; i <= seats(); ++i) {
    int s = (dealer_ + i) % seats();
    if (next_card_ >= order_.size()) throw DomainError("deck exhausted");
    Card c = order_[next_card_++];
    hands_[s] |= c.bit();
    if (to_pending && s != declarer_) pending_[s] |= c.bit();
  }
}

void GameState::finish(GameResult r) {
  result_ = std::move(r);
  phase_ = Phase::kOver;
  to_act_ = -1;
}

// ---- auction ----------------------------------------------------------

void GameState::start_round(int first, bool tie) {
  phase_ = Phase::kAuction;
  closing_ = false;
  claimed_ = false;
  closer_ = -1;
  queue_.clear();
  for (int s = 0; s < seats(); ++s) {
    last_bid_[s].reset();
    if (!tie) out_[s] = false;
    passed_[s] = out_[s];
  }
  if (!tie) max_bid_.reset();
  must_bid_ = tie ? first : -1;
  to_act_ = first;
}

std::vector<PontBid> GameState::legal_bids() const {
  std::vector<PontBid> out;
  int s = to_act_;
  if (phase_ == Phase::kAuction && closing_) {
    out.push_back(*max_bid_);
    return out;
  }
  if (phase_ != Phase::kAuction && phase_ != Phase::kTieBid) return out;
  GameConfig scale_cfg = cfg_;
  if (phase_ == Phase::kTieBid) scale_cfg.variant = Variant::kBasic;
  auto scale = bid_scale(scale_cfg);
  int lo = max_bid_ ? bid_rank(scale_cfg, *max_bid_) : 0;
  for (int i = lo; i < static_cast<int>(scale.size()); ++i) {
    const auto& b = scale[i];
    if (b.misere && upgrades_ > 0) continue;
    if (phase_ == Phase::kAuction && last_bid_[s] && *last_bid_[s] == b) continue;  // that is a close
    out.push_back(b);
  }
  return out;
}

std::vector<Action> GameState::legal_actions() const {
  std::vector<Action> out;
  if (phase_ == Phase::kOver) return out;
  int s = to_act_;
  auto push = [&](ActionType t) {
    Action a;
    a.type = t;
    a.seat = s;
    out.push_back(a);
    return &out.back();
  };
  switch (phase_) {
    case Phase::kAuction: {
      for (const auto& b : legal_bids()) push(ActionType::kBid)->bid = b;
      if (closing_) {
        push(ActionType::kPass);
        break;
      }
      if (last_bid_[s] && max_bid_ && *last_bid_[s] == *max_bid_) push(ActionType::kClose);
      bool alone = true;
      for (int t = 0; t < seats(); ++t) alone = alone && (t == s || passed_[t]);
      if (!opener_must_bid(s) && !(max_bid_ && alone)) push(ActionType::kPass);
      break;
    }
    case Phase::kUpgrade:
      for (Card c : to_vector(hands_[s])) push(ActionType::kDiscard)->card = c;
      break;
    case Phase::kContract: {
      if (cfg_.variant == Variant::kPoker) return poker_actions();
      if (cards_ < 9) push(ActionType::kIncrease);
      const PontBid& b = *win_bid_;
      bool misere_ok = cfg_.variant == Variant::kFull && cards_ == 6 &&
                       (b.misere || (upgrades_ == 0 && increases_ == 0 && b.n * 4 <= 3 * b.d));
      if (misere_ok) push(ActionType::kDeclare)->misere = true;
      int lo = min_tricks(b, cards_);
      for (int t = -1; t < kSuits; ++t)
        for (int k = lo; k <= cards_; ++k) {
          Action* a = push(ActionType::kDeclare);
          a->tricks = k;
          if (t >= 0) a->trump = static_cast<Suit>(t);
        }
      break;
    }
    case Phase::kPlay: {
      std::optional<Suit> led;
      if (!trick_.empty()) led = trick_.front().suit();
      for (Card c : to_vector(legal_cards(hands_[s], led, trump(), s == declarer_))) push(ActionType::kPlay)->card = c;
      if (cfg_.partnerships && contract_ && !contract_->misere && !exposed_ && s == declarer_) push(ActionType::kExpose);
      break;
    }
    default:
      return poker_actions();
  }
  return out;
}

bool GameState::is_legal(const Action& a) const {
  auto acts = legal_actions();
  return std::find(acts.begin(), acts.end(), a) != acts.end();
}

void GameState::apply(const Action& a) {
  if (phase_ == Phase::kOver) throw IllegalAction("game is over");
  if (a.seat != to_act_) throw IllegalAction("seat " + std::to_string(a.seat) + " is not to act; seat " + std::to_string(to_act_) + " is");
  if (!is_legal(a)) {
    std::string why = std::string(to_string(a.type)) + " is not allowed in " + std::string(to_string(phase_));
    if (a.type == ActionType::kBid && (phase_ == Phase::kAuction || phase_ == Phase::kTieBid))
      why = "bid " + to_string(a.bid) + " is not allowed here" + (max_bid_ ? " (current " + to_string(*max_bid_) + ")" : std::string());
    if (a.type == ActionType::kPlay && phase_ == Phase::kPlay)
      why = contains(hands_[a.seat], a.card) ? to_string(a.card) + " must not be played: follow suit, trump when void, no trump leads for defenders"
                                             : to_string(a.card) + " is not in hand";
    if (a.type == ActionType::kPass && phase_ == Phase::kAuction) why = "pass is not allowed: the last remaining bidder must close or bid";
    throw IllegalAction(why);
  }
  history_.push_back(a);
  int s = a.seat;
  switch (phase_) {
    case Phase::kAuction:
      if (closing_) {
        if (a.type == ActionType::kBid) {
          claimed_ = true;
          last_bid_[s] = a.bid;
          if (upgrades_ == 0) round1_bid_[s] = a.bid;
        } else {
          passed_[s] = true;
        }
        queue_.pop_front();
        after_close_queue();
      } else if (a.type == ActionType::kBid) {
        last_bid_[s] = a.bid;
        if (upgrades_ == 0) round1_bid_[s] = a.bid;
        max_bid_ = a.bid;
        must_bid_ = -1;
        advance_auction(s);
      } else if (a.type == ActionType::kPass) {
        passed_[s] = true;
        advance_auction(s);
      } else {
        closer_ = s;
        closing_ = true;
        if (cfg_.partnerships) passed_[cfg_.partner(s)] = true;
        for (int i = 1; i < seats(); ++i) {
          int t = (s + i) % seats();
          if (!passed_[t]) queue_.push_back(t);
        }
        after_close_queue();
      }
      break;
    case Phase::kUpgrade:
      hands_[s] &= ~a.card.bit();
      discards_[s] |= a.card.bit();
      queue_.pop_front();
      if (queue_.empty()) start_round(tie_round_ ? closer_ : dealer_, tie_round_);
      else to_act_ = queue_.front();
      break;
    case Phase::kContract:
      if (cfg_.variant == Variant::kPoker) {
        poker_apply(a);
        break;
      }
      if (a.type == ActionType::kIncrease) {
        ++increases_;
        ++cards_;
        deal_round(true);
      } else {
        Contract c;
        c.declarer = declarer_;
        c.cards = cards_;
        c.misere = a.misere;
        c.trump = a.misere ? std::nullopt : a.trump;
        c.tricks = a.misere ? 0 : a.tricks;
        contract_ = c;
        pending_.fill(0);
        if (c.misere && cfg_.partnerships) {
          int p = cfg_.partner(declarer_);
          discards_[p] |= hands_[p];
          hands_[p] = 0;
          active_[p] = false;
        }
        phase_ = Phase::kPlay;
        leader_ = declarer_;
        to_act_ = declarer_;
      }
      break;
    case Phase::kPlay:
      if (a.type == ActionType::kExpose) exposed_ = true;
      else apply_play(s, a.card);
      break;
    default:
      poker_apply(a);
  }
}

void GameState::advance_auction(int from) {
  for (int i = 1; i <= seats(); ++i) {
    int t = (from + i) % seats();
    if (!passed_[t]) {
      to_act_ = t;
      return;
    }
  }
  end_all_pass();
}

void GameState::after_close_queue() {
  if (!queue_.empty()) {
    to_act_ = queue_.front();
    return;
  }
  if (!claimed_) make_declarer(closer_);
  else if (upgrades_ < 2) start_upgrade(true);
  else start_downplay(closer_);
}

void GameState::end_all_pass() {
  if (upgrades_ < 2) start_upgrade(false);
  else start_downplay(dealer_);
}

void GameState::start_upgrade(bool tie) {
  ++upgrades_;
  tie_round_ = tie;
  if (tie)
    for (int s = 0; s < seats(); ++s) out_[s] = passed_[s];
  deal_round(false);
  queue_.clear();
  for (int i = 1; i <= seats(); ++i) queue_.push_back((dealer_ + i) % seats());
  phase_ = Phase::kUpgrade;
  to_act_ = queue_.front();
}

void GameState::make_declarer(int s) {
  declarer_ = s;
  win_bid_ = max_bid_;
  premium_ = round1_bid_[s] && premium_bid(cfg_, *round1_bid_[s]);
  phase_ = Phase::kContract;
  to_act_ = s;
}

void GameState::start_downplay(int leader) {
  downplay_ = true;
  phase_ = Phase::kPlay;
  leader_ = leader;
  to_act_ = leader;
}

// ---- play -------------------------------------------------------------

void GameState::apply_play(int s, Card c) {
  hands_[s] &= ~c.bit();
  played_ |= c.bit();
  if (!trick_.empty() && c.suit() != trick_.front().suit()) voids_[s] |= 1u << static_cast<int>(trick_.front().suit());
  trick_.push_back(c);
  if (contract_ && contract_->misere && tricks_.empty() && trick_.size() == 1) misere_open_ = seats() >= 3;
  int n_active = 0;
  for (int t = 0; t < seats(); ++t) n_active += active_[t];
  if (static_cast<int>(trick_.size()) < n_active) {
    to_act_ = next_active(s);
    return;
  }
  int w = trick_winner(trick_, trump());
  int seat = leader_;
  for (int i = 0; i < w; ++i) seat = next_active(seat);
  ++tricks_won_[seat];
  tricks_.push_back({leader_, trick_, seat});
  trick_.clear();
  leader_ = seat;
  to_act_ = seat;
  check_play_end();
}

void GameState::check_play_end() {
  int remaining = count(hands_[leader_]);
  if (downplay_ || cfg_.variant == Variant::kPoker) {
    if (remaining == 0) {
      if (downplay_) score_play();
      else poker_payout();
    }
    return;
  }
  bool strict = cfg_.strict_scoring;
  if (remaining == 0) {
    score_play();
  } else if (contract_->misere) {
    if (!strict && tricks_won_[declarer_] > 0) score_play();
  } else {
    int side = side_tricks(declarer_);
    if (!strict && (side >= contract_->tricks || side + remaining < contract_->tricks)) score_play();
  }
}

void GameState::score_play() {
  GameResult r;
  r.tricks.assign(tricks_won_.begin(), tricks_won_.begin() + seats());
  r.deltas.assign(seats(), 0.0);
  if (downplay_) {
    r.kind = GameResult::Kind::kDownplay;
    if (cfg_.partnerships) {
      auto d = score_downplay({tricks_won_[0] + tricks_won_[2], tricks_won_[1] + tricks_won_[3]}, true);
      for (int s = 0; s < 4; ++s) r.deltas[s] = d[s % 2] / 2;
    } else {
      r.deltas = score_downplay(r.tricks, seats() == 2);
    }
  } else {
    r.kind = contract_->misere ? GameResult::Kind::kMisere : GameResult::Kind::kContract;
    r.contract = contract_;
    ScoreContext ctx{cfg_.two_sided(), cfg_.variant, cfg_.strict_scoring, premium_};
    r.breakdown = score_contract(*contract_, side_tricks(declarer_), ctx);
    r.deltas[declarer_] = r.breakdown.delta;
  }
  r.rewards = rewards(r.deltas, cfg_.partnerships);
  finish(std::move(r));
}

}  // namespace mrt::pont
