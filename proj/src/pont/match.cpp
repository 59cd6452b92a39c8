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

#include "mrt/pont/match.hpp"

#include <istream>
#include <ostream>

#include "mrt/core/error.hpp"
#include "mrt/pont/bot.hpp"

namespace mrt::pont {

using nlohmann::json;

json to_json(const Action& a) {
  json j = {{"type", to_string(a.type)}, {"seat", a.seat}};
  switch (a.type) {
    case ActionType::kBid: j["bid"] = to_string(a.bid); break;
    case ActionType::kDiscard:
    case ActionType::kPlay: j["card"] = to_string(a.card); break;
    case ActionType::kRaise: j["amount"] = a.amount; break;
    case ActionType::kDeclare:
      if (a.misere) {
        j["misere"] = true;
      } else {
        j["tricks"] = a.tricks;
        j["trump"] = a.trump ? std::string(1, suit_char(*a.trump)) : std::string("NT");
      }
      break;
    default: break;
  }
  return j;
}

Action action_from_json(const json& j) {
  try {
    Action a;
    a.type = parse_action_type(j.at("type").get<std::string>());
    a.seat = j.at("seat").get<int>();
    switch (a.type) {
      case ActionType::kBid: a.bid = parse_bid(j.at("bid").get<std::string>()); break;
      case ActionType::kDiscard:
      case ActionType::kPlay: a.card = parse_card(j.at("card").get<std::string>()); break;
      case ActionType::kRaise: a.amount = j.at("amount").get<int>(); break;
      case ActionType::kDeclare:
        a.misere = j.value("misere", false);
        if (!a.misere) {
          a.tricks = j.at("tricks").get<int>();
          auto t = j.at("trump").get<std::string>();
          if (t != "NT") {
            if (t.size() != 1) throw DomainError("bad trump '" + t + "'");
            a.trump = parse_suit(t[0]);
          }
        }
        break;
      default: break;
    }
    return a;
  } catch (const json::exception& e) {
    throw IllegalAction(std::string("malformed action: ") + e.what());
  } catch (const DomainError& e) {
    throw IllegalAction(std::string("malformed action: ") + e.what());
  }
}

json to_json(const GameConfig& c) {
  return {{"players", c.players}, {"partnerships", c.partnerships}, {"variant", to_string(c.variant)},
          {"deck", c.deck_size()}, {"seed", c.seed}, {"strict_scoring", c.strict_scoring},
          {"bot_samples", c.bot_samples}, {"ante", c.ante}, {"max_raise", c.max_raise}, {"bet_cap", c.bet_cap}};
}

GameConfig config_from_json(const json& j) {
  GameConfig c;
  try {
    c.players = j.value("players", c.players);
    c.partnerships = j.value("partnerships", c.partnerships);
    if (j.contains("variant")) c.variant = parse_variant(j.at("variant").get<std::string>());
    c.deck = j.value("deck", 0);
    c.seed = j.value("seed", c.seed);
    c.strict_scoring = j.value("strict_scoring", c.strict_scoring);
    c.bot_samples = j.value("bot_samples", c.bot_samples);
    c.ante = j.value("ante", c.ante);
    c.max_raise = j.value("max_raise", c.max_raise);
    c.bet_cap = j.value("bet_cap", c.bet_cap);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad game config: ") + e.what());
  }
  c.validate();
  return c;
}

Match::Match(const GameConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  scores_.assign(cfg_.players, 0.0);
  game_ = std::make_unique<GameState>(cfg_, 0, 0, 0);
  record({{"type", "config"}, {"config", to_json(cfg_)}});
}

void Match::record(json event) { log_.push_back({{"v", kLogVersion}, {"event", std::move(event)}}); }

void Match::apply(const Action& a) {
  game_->apply(a);
  record({{"type", "action"}, {"action", to_json(a)}});
  settle();
}

void Match::settle() {
  if (!game_->over() || settled_) return;
  const auto& r = *game_->result();
  for (int s = 0; s < cfg_.players; ++s) scores_[s] += r.deltas[s];
  pot_ = game_->pot();
  results_.push_back(r);
  settled_ = true;
}

void Match::next_game() {
  if (!game_->over()) throw IllegalAction("the current game is not over");
  int idx = game_index();
  game_ = std::make_unique<GameState>(cfg_, idx % cfg_.players, static_cast<std::uint64_t>(idx), pot_);
  settled_ = false;
  record({{"type", "next"}});
}

std::uint64_t Match::bot_seed() const {
  return cfg_.seed * 0x9E3779B97F4A7C15ULL + (static_cast<std::uint64_t>(game_index()) << 24) + game_->history().size();
}

Action Match::bot_step() {
  Action a = bot_action(*game_, bot_seed());
  apply(a);
  return a;
}

void Match::write_log(std::ostream& os) const {
  for (const auto& j : log_) os << j.dump() << '\n';
}

Match Match::replay(const std::vector<json>& events) {
  if (events.empty()) throw ParseError("empty action log", 0);
  auto event = [&](std::size_t i) -> const json& {
    const json& e = events[i];
    if (!e.is_object() || e.value("v", 0) != kLogVersion || !e.contains("event"))
      throw ParseError("unsupported log record", i + 1);
    return e.at("event");
  };
  const json& first = event(0);
  if (first.value("type", "") != "config") throw ParseError("log must start with a config event", 1);
  Match m(config_from_json(first.at("config")));
  for (std::size_t i = 1; i < events.size(); ++i) {
    const json& e = event(i);
    std::string type = e.value("type", "");
    try {
      if (type == "action") m.apply(action_from_json(e.at("action")));
      else if (type == "next") m.next_game();
      else throw ParseError("unknown event '" + type + "'", i + 1);
    } catch (const IllegalAction& ex) {
      throw ParseError(std::string("replay rejected: ") + ex.what(), i + 1);
    }
  }
  return m;
}

Match Match::replay(std::istream& is) {
  std::vector<json> events;
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      events.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), n);
    }
  }
  return replay(events);
}

}  // namespace mrt::pont
