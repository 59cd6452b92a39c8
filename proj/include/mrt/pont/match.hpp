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
// A sequence of deals with rotating dealer and running scores, plus the
// JSON-lines action log that replays it.

#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrt/pont/game.hpp"

namespace mrt::pont {

inline constexpr int kLogVersion = 1;

nlohmann::json to_json(const Action& a);
Action action_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GameConfig& c);
GameConfig config_from_json(const nlohmann::json& j);

class Match {
 public:
  explicit Match(const GameConfig& cfg);

  const GameConfig& config() const { return cfg_; }
  const GameState& game() const { return *game_; }
  int game_index() const { return static_cast<int>(results_.size()); }
  // Points, or chip balances in poker.
  const std::vector<double>& scores() const { return scores_; }
  int pot() const { return pot_; }
  const std::vector<GameResult>& results() const { return results_; }
  std::vector<double> rewards() const { return pont::rewards(scores_, cfg_.partnerships); }

  void apply(const Action& a);
  // Deal the next game once the current one is over; the dealer moves on.
  void next_game();
  // The computer's move for the seat to act, applied and returned.
  Action bot_step();
  std::uint64_t bot_seed() const;

  // One JSON object per line: {"v":1,"event":{...}}.
  const std::vector<nlohmann::json>& log() const { return log_; }
  void write_log(std::ostream& os) const;
  static Match replay(const std::vector<nlohmann::json>& events);
  static Match replay(std::istream& is);

 private:
  void record(nlohmann::json event);
  void settle();

  GameConfig cfg_;
  std::unique_ptr<GameState> game_;
  std::vector<double> scores_;
  std::vector<GameResult> results_;
  int pot_ = 0;
  bool settled_ = false;
  std::vector<nlohmann::json> log_;
};

}  // namespace mrt::pont
