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
// Poker pont: antes, betting rounds with optional upgrades, the tie-break
// bidding round, paid increases, responding opponents and the payout.

#include <algorithm>

#include "mrt/core/error.hpp"
#include "mrt/pont/game.hpp"

namespace mrt::pont {

namespace {
int max_of(const std::array<int, 4>& a, int n) { return *std::max_element(a.begin(), a.begin() + n); }
}  // namespace

void GameState::pay(int seat, int chips) {
  chips_[seat] -= chips;
  sector_[seat] += chips;
}

void GameState::poker_start() {
  for (int s = 0; s < seats(); ++s) {
    chips_[s] -= cfg_.ante;
    pot_ += cfg_.ante;
  }
  phase_ = Phase::kBetting;
  acted_.fill(false);
  closer_ = -1;
  to_act_ = dealer_;
}

void GameState::poker_next_round(bool tie) {
  int first = tie ? closer_ : dealer_;
  phase_ = Phase::kBetting;
  acted_.fill(false);
  closer_ = -1;
  if (!tie) out_.fill(false);
  to_act_ = first;
}

std::vector<Action> GameState::poker_actions() const {
  std::vector<Action> out;
  int s = to_act_;
  auto push = [&](ActionType t) {
    Action a;
    a.type = t;
    a.seat = s;
    out.push_back(a);
    return &out.back();
  };
  switch (phase_) {
    case Phase::kBetting: {
      int mb = max_of(bet_, seats());
      bool others = false;
      for (int t = 0; t < seats(); ++t) others = others || (t != s && !out_[t]);
      if (!(mb > 0 && !others)) push(ActionType::kPass);
      if (mb > 0) push(ActionType::kCall);
      for (int k = 1; k <= cfg_.max_raise && mb + k <= cfg_.bet_cap; ++k) push(ActionType::kRaise)->amount = k;
      break;
    }
    case Phase::kPokerUpgrade:
      if (upgrading_[s]) {
        for (Card c : to_vector(hands_[s])) push(ActionType::kDiscard)->card = c;
      } else {
        push(ActionType::kUpgrade);
        push(ActionType::kSkip);
      }
      break;
    case Phase::kTieBid:
      for (const auto& b : legal_bids()) push(ActionType::kBid)->bid = b;
      push(ActionType::kPass);
      break;
    case Phase::kContract: {
      if (increases_ < 3 && cards_ < 9) push(ActionType::kIncrease);
      int k = required_tricks();
      for (int t = -1; t < kSuits; ++t) {
        Action* a = push(ActionType::kDeclare);
        a->tricks = k;
        if (t >= 0) a->trump = static_cast<Suit>(t);
      }
      break;
    }
    case Phase::kRespond:
      push(ActionType::kRespond);
      push(ActionType::kPass);
      break;
    default:
      break;
  }
  return out;
}

void GameState::poker_apply(const Action& a) {
  int s = a.seat;
  switch (phase_) {
    case Phase::kBetting: {
      int mb = max_of(bet_, seats());
      if (a.type == ActionType::kRaise) {
        pay(s, mb + a.amount - bet_[s]);
        bet_[s] = mb + a.amount;
        acted_.fill(false);
      } else if (a.type == ActionType::kCall) {
        pay(s, mb - bet_[s]);
        bet_[s] = mb;
        if (closer_ < 0) closer_ = s;
      } else if (mb > 0) {
        out_[s] = true;  // passed after a raise: out for this deal
      }
      acted_[s] = true;
      mb = max_of(bet_, seats());
      auto waiting = [&](int t) { return !out_[t] && !(acted_[t] && bet_[t] == mb); };
      for (int i = 1; i <= seats(); ++i) {
        int t = (s + i) % seats();
        if (waiting(t)) {
          to_act_ = t;
          return;
        }
      }
      poker_round_end();
      break;
    }
    case Phase::kPokerUpgrade:
      if (a.type == ActionType::kUpgrade) {
        pay(s, 1);
        if (next_card_ >= order_.size()) throw DomainError("deck exhausted");
        hands_[s] |= order_[next_card_++].bit();
        upgrading_[s] = true;
        return;
      }
      if (a.type == ActionType::kDiscard) {
        hands_[s] &= ~a.card.bit();
        discards_[s] |= a.card.bit();
        upgrading_[s] = false;
      }
      queue_.pop_front();
      if (queue_.empty()) poker_next_round(tie_round_);
      else to_act_ = queue_.front();
      break;
    case Phase::kTieBid:
      if (a.type == ActionType::kBid) {
        last_bid_[s] = a.bid;
        max_bid_ = a.bid;
      }
      queue_.pop_front();
      if (!queue_.empty()) {
        to_act_ = queue_.front();
        break;
      }
      {
        int holders = 0, who = -1;
        for (int t = 0; t < seats(); ++t)
          if (max_bid_ && last_bid_[t] && *last_bid_[t] == *max_bid_) ++holders, who = t;
        if (holders != 1) {
          poker_no_game();
          break;
        }
        declarer_ = who;
        win_bid_ = max_bid_;
        phase_ = Phase::kContract;
        to_act_ = who;
      }
      break;
    case Phase::kContract:
      if (a.type == ActionType::kIncrease) {
        ++increases_;
        ++cards_;
        pay(s, 1);
        deal_round(true);
        break;
      }
      {
        Contract c;
        c.declarer = declarer_;
        c.cards = cards_;
        c.trump = a.trump;
        c.tricks = a.tricks;
        contract_ = c;
        pending_.fill(0);
        queue_.clear();
        for (int i = 1; i < seats(); ++i) queue_.push_back((declarer_ + i) % seats());
        phase_ = Phase::kRespond;
        to_act_ = queue_.front();
      }
      break;
    case Phase::kRespond:
      if (a.type == ActionType::kRespond) {
        pay(s, cards_ - 6);
        responded_[s] = true;
      }
      queue_.pop_front();
      if (!queue_.empty()) {
        to_act_ = queue_.front();
      } else {
        phase_ = Phase::kPlay;
        leader_ = declarer_;
        to_act_ = declarer_;
      }
      break;
    default:
      throw IllegalAction("no poker action in " + std::string(to_string(phase_)));
  }
}

void GameState::poker_round_end() {
  int mb = max_of(bet_, seats());
  std::vector<int> alive;
  for (int t = 0; t < seats(); ++t)
    if (!out_[t]) alive.push_back(t);
  if (mb == 0) {
    if (upgrades_ < 3) {
      ++upgrades_;
      tie_round_ = false;
    } else {
      poker_no_game();
      return;
    }
  } else if (alive.size() == 1) {
    declarer_ = alive.front();
    phase_ = Phase::kContract;
    to_act_ = declarer_;
    return;
  } else if (upgrades_ < 3) {
    ++upgrades_;
    tie_round_ = true;
  } else {
    queue_.clear();
    for (int i = 0; i < seats(); ++i) {
      int t = (closer_ + i) % seats();
      if (!out_[t]) queue_.push_back(t);
    }
    max_bid_.reset();
    for (auto& b : last_bid_) b.reset();
    phase_ = Phase::kTieBid;
    to_act_ = queue_.front();
    return;
  }
  queue_.clear();
  for (int i = 1; i <= seats(); ++i) queue_.push_back((dealer_ + i) % seats());
  phase_ = Phase::kPokerUpgrade;
  to_act_ = queue_.front();
}

void GameState::poker_no_game() {
  for (int s = 0; s < seats(); ++s) {
    pot_ += sector_[s];
    sector_[s] = 0;
  }
  GameResult r;
  r.kind = GameResult::Kind::kNoGame;
  r.tricks.assign(seats(), 0);
  r.deltas.assign(chips_.begin(), chips_.begin() + seats());
  r.rewards = rewards(r.deltas, false);  // chip deltas relative to the table mean
  r.pot_delta = pot_ - pot_start_;
  finish(std::move(r));
}

void GameState::poker_payout() {
  int d = declarer_;
  int taken = tricks_won_[d];
  bool made = taken >= contract_->tricks;
  if (made) {
    for (int s = 0; s < seats(); ++s) chips_[d] += sector_[s];
    chips_[d] += pot_;
    pot_ = 0;
  } else {
    for (int s = 0; s < seats(); ++s)
      if (s != d) chips_[s] += sector_[s];
    bool any = false;
    for (int s = 0; s < seats(); ++s) any = any || responded_[s];
    if (!any) {
      chips_[d] += sector_[d];
    } else {
      std::vector<int> seats_in, tricks;
      for (int s = 0; s < seats(); ++s)
        if (responded_[s]) seats_in.push_back(s), tricks.push_back(tricks_won_[s]);
      PoolSplit split = split_pool(sector_[d] + pot_, tricks);
      for (std::size_t i = 0; i < seats_in.size(); ++i) chips_[seats_in[i]] += split.shares[i];
      pot_ = split.remainder;  // fractions stay in the pot
    }
  }
  sector_.fill(0);
  GameResult r;
  r.kind = GameResult::Kind::kContract;
  r.contract = contract_;
  r.breakdown.made = made;
  r.breakdown.missed = std::max(0, contract_->tricks - taken);
  r.tricks.assign(tricks_won_.begin(), tricks_won_.begin() + seats());
  r.deltas.assign(chips_.begin(), chips_.begin() + seats());
  r.rewards = rewards(r.deltas, false);  // chip deltas relative to the table mean
  r.pot_delta = pot_ - pot_start_;
  finish(std::move(r));
}

}  // namespace mrt::pont
