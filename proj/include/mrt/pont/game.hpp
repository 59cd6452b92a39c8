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
// One deal of pont from the shuffle to the score: auction with upgrades,
// increases and contract, trick play, misere and downplay, and the poker
// betting flow. Single writer; copyable so bots can look ahead.

#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "mrt/pont/cards.hpp"
#include "mrt/pont/misere.hpp"
#include "mrt/pont/rules.hpp"

namespace mrt::pont {

enum class Phase {
  kAuction,
  kUpgrade,   // every seat discards back to six
  kContract,  // declarer increases or declares
  kPlay,
  kBetting,   // poker
  kPokerUpgrade,
  kTieBid,    // poker: one basic-pont round among tied bettors
  kRespond,   // poker: opponents pay for the increases or stay passive
  kOver,
};

enum class ActionType {
  kBid, kPass, kClose, kDiscard, kIncrease, kDeclare, kExpose, kPlay,
  kRaise, kCall, kUpgrade, kSkip, kRespond,
};

std::string_view to_string(Phase p);
std::string_view to_string(ActionType t);
ActionType parse_action_type(std::string_view s);

struct Action {
  ActionType type = ActionType::kPass;
  int seat = -1;
  PontBid bid{};               // kBid
  Card card{};                 // kDiscard, kPlay
  int amount = 0;              // kRaise
  std::optional<Suit> trump;   // kDeclare
  int tricks = 0;              // kDeclare
  bool misere = false;         // kDeclare

  friend bool operator==(const Action&, const Action&) = default;
};

std::string describe(const Action& a);

struct Trick {
  int leader = 0;
  std::vector<Card> cards;
  int winner = -1;
};

struct GameResult {
  enum class Kind { kContract, kMisere, kDownplay, kNoGame };
  Kind kind = Kind::kNoGame;
  std::optional<Contract> contract;
  ScoreBreakdown breakdown;
  std::vector<int> tricks;      // per seat
  std::vector<double> deltas;   // score points, or chips in poker
  std::vector<double> rewards;  // zero-sum
  double pot_delta = 0;         // poker: deltas + pot_delta sum to 0
};

std::string_view to_string(GameResult::Kind k);

class GameState {
 public:
  // `game_index` feeds the shuffle; `pot` is the poker pot carried in.
  GameState(const GameConfig& cfg, int dealer, std::uint64_t game_index = 0, int pot = 0);
  // Stacked deck: `top` is dealt first (singly, from the dealer's left) and
  // the rest of the deck follows in suit/rank order.
  GameState(const GameConfig& cfg, int dealer, const std::vector<Card>& top, int pot = 0);

  const GameConfig& config() const { return cfg_; }
  int seats() const { return cfg_.players; }
  int dealer() const { return dealer_; }
  Phase phase() const { return phase_; }
  int to_act() const { return to_act_; }
  // Seat entitled to submit for `seat`; the declarer plays an exposed partner.
  int controller(int seat) const;
  bool over() const { return phase_ == Phase::kOver; }

  std::vector<Action> legal_actions() const;
  bool is_legal(const Action& a) const;
  // Throws IllegalAction with the reason.
  void apply(const Action& a);

  // Auction-phase bids for the acting seat, in scale order.
  std::vector<PontBid> legal_bids() const;

  CardSet hand(int seat) const { return hands_[seat]; }
  // What `viewer` may see of `seat`'s hand.
  CardSet visible_hand(int viewer, int seat) const;
  CardSet discards(int seat) const { return discards_[seat]; }
  CardSet played() const { return played_; }
  CardSet stock() const;
  CardSet deck() const { return deck_mask(cfg_.deck_size()); }
  int cards_per_hand() const { return cards_; }
  int hand_count(int seat) const { return count(hands_[seat]); }
  bool active(int seat) const { return active_[seat]; }
  bool cards_conserved() const;

  int upgrades() const { return upgrades_; }
  int increases() const { return increases_; }
  std::optional<PontBid> max_bid() const { return max_bid_; }
  std::optional<PontBid> last_bid(int seat) const { return last_bid_[seat]; }
  bool passed(int seat) const { return passed_[seat]; }
  int closer() const { return closer_; }
  int declarer() const { return declarer_; }
  std::optional<PontBid> winning_bid() const { return win_bid_; }
  const std::optional<Contract>& contract() const { return contract_; }
  bool downplay() const { return downplay_; }
  bool exposed() const { return exposed_; }
  bool misere_open() const { return misere_open_; }

  int leader() const { return leader_; }
  const std::vector<Card>& current_trick() const { return trick_; }
  const std::vector<Trick>& tricks() const { return tricks_; }
  int tricks_won(int seat) const { return tricks_won_[seat]; }
  int side_tricks(int seat) const;
  // Suits a seat showed out of, as a 4-bit mask.
  unsigned voids(int seat) const { return voids_[seat]; }
  std::optional<Suit> trump() const;

  // poker
  int bet(int seat) const { return bet_[seat]; }
  int sector(int seat) const { return sector_[seat]; }
  int pot() const { return pot_; }
  bool out(int seat) const { return out_[seat]; }
  bool active_opponent(int seat) const { return responded_[seat]; }
  int poker_round() const { return upgrades_; }
  int required_tricks() const;  // poker contract size at the current hand size

  const std::optional<GameResult>& result() const { return result_; }
  const std::vector<Action>& history() const { return history_; }

  // Open position for the misere solver; every hand is included.
  OpenPosition open_position() const;

 private:
  bool scored_by_sides() const { return cfg_.partnerships; }
  void deal_start();
  int next_seat(int s) const { return (s + 1) % seats(); }
  int next_active(int s) const;
  void deal_round(bool to_pending);
  void finish(GameResult r);

  // auction
  void start_round(int first, bool tie);
  void advance_auction(int from);
  void after_close_queue();
  void end_all_pass();
  void start_upgrade(bool tie);
  void make_declarer(int s);
  void start_downplay(int leader);
  bool opener_must_bid(int s) const { return must_bid_ == s; }

  // play
  void apply_play(int seat, Card c);
  void check_play_end();
  void score_play();

  // poker
  void poker_start();
  std::vector<Action> poker_actions() const;
  void poker_apply(const Action& a);
  void poker_round_end();
  void poker_next_round(bool tie);
  void poker_no_game();
  void poker_payout();
  void pay(int seat, int chips);

  GameConfig cfg_;
  int dealer_;
  std::vector<Card> order_;  // shuffled deck, dealt from the front
  std::size_t next_card_ = 0;

  std::array<CardSet, 4> hands_{};
  std::array<CardSet, 4> discards_{};
  std::array<CardSet, 4> pending_{};  // increase cards not yet picked up
  CardSet played_ = 0;
  int cards_ = 6;

  Phase phase_ = Phase::kAuction;
  int to_act_ = -1;

  // auction
  int upgrades_ = 0;
  std::array<bool, 4> passed_{};
  std::array<bool, 4> out_{};  // passed in an earlier round
  std::array<std::optional<PontBid>, 4> last_bid_{};
  std::array<std::optional<PontBid>, 4> round1_bid_{};
  std::optional<PontBid> max_bid_;
  int closer_ = -1;
  int must_bid_ = -1;
  bool closing_ = false;
  bool claimed_ = false;
  std::deque<int> queue_;

  int declarer_ = -1;
  std::optional<PontBid> win_bid_;
  int increases_ = 0;
  std::optional<Contract> contract_;
  bool premium_ = false;
  bool downplay_ = false;
  bool exposed_ = false;
  bool misere_open_ = false;
  std::array<bool, 4> active_{true, true, true, true};

  int leader_ = 0;
  std::vector<Card> trick_;
  std::vector<Trick> tricks_;
  std::array<int, 4> tricks_won_{};
  std::array<unsigned, 4> voids_{};

  // poker
  std::array<int, 4> bet_{};
  std::array<int, 4> sector_{};
  std::array<int, 4> chips_{};  // chip movement of this deal per seat
  std::array<bool, 4> acted_{};
  std::array<bool, 4> responded_{};
  std::array<bool, 4> upgrading_{};
  int pot_ = 0;
  int pot_start_ = 0;
  bool tie_round_ = false;

  std::optional<GameResult> result_;
  std::vector<Action> history_;
};

}  // namespace mrt::pont
