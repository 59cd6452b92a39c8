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

#include "mrt/service/service.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include "mrt/core/error.hpp"
#include "mrt/pont/bot.hpp"

namespace mrt::service {

using nlohmann::json;
using namespace mrt::pont;

namespace {

struct Failure {
  std::string code;
  std::string reason;
};

json error(const std::string& code, const std::string& reason) {
  return {{"v", kProtocolVersion}, {"ok", false}, {"error", {{"code", code}, {"reason", reason}}}};
}

json ok(json body = json::object()) {
  body["v"] = kProtocolVersion;
  body["ok"] = true;
  return body;
}

json cards_json(CardSet m) {
  json a = json::array();
  for (Card c : to_vector(m)) a.push_back(to_string(c));
  return a;
}

json opt_bid(const std::optional<PontBid>& b, bool two) { return b ? bid_json(*b, two) : json(nullptr); }

json contract_json(const Contract& c) {
  return {{"declarer", c.declarer}, {"misere", c.misere}, {"tricks", c.tricks}, {"cards", c.cards},
          {"trump", c.misere || !c.trump ? json("NT") : json(std::string(1, suit_char(*c.trump)))},
          {"text", contract_string(c)}};
}

json result_json(const GameResult& r) {
  json j = {{"kind", to_string(r.kind)}, {"tricks", r.tricks}, {"deltas", r.deltas}, {"rewards", r.rewards},
            {"pot_delta", r.pot_delta},
            {"breakdown", {{"value", r.breakdown.value}, {"premium", r.breakdown.premium},
                           {"bonus", r.breakdown.bonus}, {"made", r.breakdown.made}, {"missed", r.breakdown.missed}}}};
  j["contract"] = r.contract ? contract_json(*r.contract) : json(nullptr);
  return j;
}

std::string kind_name(SeatKind k) { return k == SeatKind::kBot ? "bot" : "human"; }

SeatKind parse_kind(const std::string& s) {
  if (s == "bot") return SeatKind::kBot;
  if (s == "human") return SeatKind::kHuman;
  throw Failure{"bad-request", "seat kind must be human or bot, not '" + s + "'"};
}

int seat_of(const json& req, int seats) {
  if (!req.contains("seat") || !req["seat"].is_number_integer()) throw Failure{"bad-request", "missing integer seat"};
  int s = req["seat"].get<int>();
  if (s < -1 || s >= seats) throw Failure{"bad-request", "seat out of range"};
  return s;
}

// Log events as `seat` may see them: no deal seed, and discards only to their owner.
json redact_event(json e, int seat) {
  json& ev = e["event"];
  std::string type = ev.value("type", "");
  if (type == "config") ev["config"].erase("seed");
  if (type == "action" && ev["action"].value("type", "") == "discard" && ev["action"].value("seat", -2) != seat)
    ev["action"].erase("card");
  return e;
}

json events_since(const Match& m, std::size_t from, int seat) {
  json out = json::array();
  for (std::size_t i = from; i < m.log().size(); ++i) out.push_back(redact_event(m.log()[i], seat));
  return out;
}

}  // namespace

json bid_json(const PontBid& b, bool two_sided) { return {{"bid", to_string(b)}, {"name", bid_name(b, two_sided)}}; }

json legal_view(const GameState& g, int seat) {
  json out = json::array();
  if (g.over() || seat < 0 || g.controller(g.to_act()) != seat) return out;
  bool two = g.config().two_sided();
  for (const auto& a : g.legal_actions()) {
    json j = to_json(a);
    if (a.type == ActionType::kBid) j["name"] = bid_name(a.bid, two);
    if (a.type == ActionType::kClose && g.last_bid(a.seat)) j["name"] = bid_name(*g.last_bid(a.seat), two);
    std::string d = describe(a);
    j["label"] = d.substr(d.find(' ', 5) + 1);
    out.push_back(std::move(j));
  }
  return out;
}

json state_view(const Match& m, int seat) {
  // The seed would let anyone recompute the deal.
  auto public_config = [](const GameConfig& c) {
    json j = to_json(c);
    j.erase("seed");
    return j;
  };
  const GameState& g = m.game();
  const GameConfig& cfg = g.config();
  bool two = cfg.two_sided();
  int n = g.seats();
  json hands = json::array();
  for (int t = 0; t < n; ++t) {
    CardSet vis = g.visible_hand(seat, t);
    hands.push_back({{"seat", t}, {"count", g.hand_count(t)}, {"cards", cards_json(vis)},
                     {"complete", vis == g.hand(t)}, {"active", g.active(t)}});
  }
  json last = json::array(), passed = json::array();
  for (int t = 0; t < n; ++t) {
    last.push_back(opt_bid(g.last_bid(t), two));
    passed.push_back(g.passed(t));
  }
  json trick = json::array();
  {
    int s = g.leader();
    for (Card c : g.current_trick()) {
      trick.push_back({{"seat", s}, {"card", to_string(c)}});
      do s = (s + 1) % n;
      while (!g.active(s));
    }
  }
  json done = json::array();
  for (const auto& t : g.tricks()) {
    json cards = json::array();
    int s = t.leader;
    for (Card c : t.cards) {
      cards.push_back({{"seat", s}, {"card", to_string(c)}});
      do s = (s + 1) % n;
      while (!g.active(s));
    }
    done.push_back({{"leader", t.leader}, {"winner", t.winner}, {"cards", cards}});
  }
  json won = json::array();
  for (int t = 0; t < n; ++t) won.push_back(g.tricks_won(t));

  json v = {
      {"config", public_config(cfg)},
      {"seat", seat},
      {"game_index", m.game_index()},
      {"dealer", g.dealer()},
      {"phase", to_string(g.phase())},
      {"to_act", g.to_act()},
      {"controller", g.over() ? -1 : g.controller(g.to_act())},
      {"hands", hands},
      {"discards", seat >= 0 ? cards_json(g.discards(seat)) : json::array()},
      {"auction", {{"upgrades", g.upgrades()}, {"max_bid", opt_bid(g.max_bid(), two)}, {"last_bids", last},
                   {"passed", passed}, {"closer", g.closer()}, {"declarer", g.declarer()},
                   {"winning_bid", opt_bid(g.winning_bid(), two)}}},
      {"cards_per_hand", g.cards_per_hand()},
      {"increases", g.increases()},
      {"contract", g.contract() ? contract_json(*g.contract()) : json(nullptr)},
      {"downplay", g.downplay()},
      {"exposed", g.exposed()},
      {"misere_open", g.misere_open()},
      {"trick", {{"leader", g.leader()}, {"cards", trick}}},
      {"tricks", done},
      {"tricks_won", won},
      {"scores", m.scores()},
      {"rewards", m.rewards()},
      {"result", g.result() ? result_json(*g.result()) : json(nullptr)},
      {"history", json::array()},
      {"legal", legal_view(g, seat)},
  };
  for (const auto& r : m.results()) v["history"].push_back(result_json(r));
  if (cfg.variant == Variant::kPoker) {
    json bets = json::array(), sectors = json::array(), out = json::array(), resp = json::array();
    for (int t = 0; t < n; ++t) {
      bets.push_back(g.bet(t));
      sectors.push_back(g.sector(t));
      out.push_back(g.out(t));
      resp.push_back(g.active_opponent(t));
    }
    v["poker"] = {{"pot", g.pot()}, {"bets", bets}, {"sectors", sectors}, {"out", out}, {"responded", resp},
                  {"required_tricks", g.phase() == Phase::kContract ? json(g.required_tricks()) : json(nullptr)}};
  }
  return v;
}

PontService::PontService(ServiceOptions opts) : opts_(std::move(opts)) {
  if (!opts_.data_dir.empty()) {
    std::filesystem::create_directories(opts_.data_dir);
    load_all();
  }
}

void PontService::on_change(std::function<void(const std::string&, std::uint64_t)> cb) {
  std::unique_lock lk(mu_);
  on_change_ = std::move(cb);
}

std::vector<std::string> PontService::sessions() const {
  std::shared_lock lk(mu_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

json PontService::handle(const json& req) {
  try {
    if (!req.is_object()) throw Failure{"bad-request", "request must be a JSON object"};
    if (req.value("v", 0) != kProtocolVersion) throw Failure{"bad-request", "protocol version must be 1"};
    std::string op = req.value("op", "");
    if (op == "create") return create(req);
    if (op == "list") {
      json ids = json::array();
      for (const auto& id : sessions()) ids.push_back(id);
      return ok({{"sessions", ids}});
    }
    if (op == "join") {
      return with_session(req, [&](Session& s) {
        int seat = seat_of(req, static_cast<int>(s.seats.size()));
        if (seat < 0 || s.seats[seat] != SeatKind::kHuman) throw Failure{"illegal-action", "seat is not open for a human"};
        s.joined[seat] = true;
        return ok({{"session", s.id}, {"seq", seq(s)}, {"state", state_view(*s.match, seat)}});
      });
    }
    if (op == "events") {
      return with_session(req, [&](Session& s) {
        int seat = seat_of(req, static_cast<int>(s.seats.size()));
        std::uint64_t from = req.value("from", std::uint64_t{0});
        return ok({{"session", s.id}, {"seq", seq(s)}, {"events", events_since(*s.match, from, seat)}});
      });
    }
    if (op == "state" || op == "legal") {
      return with_session(req, [&](Session& s) {
        int seat = seat_of(req, static_cast<int>(s.seats.size()));
        json body = {{"session", s.id}, {"seq", seq(s)}};
        if (op == "state") body["state"] = state_view(*s.match, seat);
        else body["legal"] = legal_view(s.match->game(), seat);
        return ok(body);
      });
    }
    if (op == "submit" || op == "next") {
      std::string id;
      std::uint64_t after = 0;
      json out = with_session(req, [&](Session& s) {
        int seat = seat_of(req, static_cast<int>(s.seats.size()));
        if (!req.contains("seq") || !req["seq"].is_number_unsigned()) throw Failure{"bad-request", "missing seq"};
        std::uint64_t want = req["seq"].get<std::uint64_t>();
        std::uint64_t before = seq(s);
        if (want != before)
          throw Failure{"stale-seq", "seq " + std::to_string(want) + " is stale; current is " + std::to_string(before)};
        if (seat < 0) throw Failure{"illegal-action", "spectators cannot act"};
        if (op == "submit" && s.seats[seat] != SeatKind::kHuman)
          throw Failure{"illegal-action", "seat is played by the computer"};
        Match& m = *s.match;
        try {
          if (op == "next") {
            m.next_game();
          } else {
            if (!req.contains("action")) throw Failure{"bad-request", "missing action"};
            json aj = req["action"];
            if (!aj.contains("seat") && !m.game().over()) aj["seat"] = m.game().to_act();
            Action a = action_from_json(aj);
            if (m.game().over()) throw IllegalAction("game is over; send next");
            if (m.game().controller(a.seat) != seat || a.seat != m.game().to_act())
              throw IllegalAction("seat " + std::to_string(seat) + " may not act now");
            m.apply(a);
          }
        } catch (const IllegalAction& e) {
          throw Failure{"illegal-action", e.what()};
        }
        run_bots(s);
        persist(s);
        json events = events_since(m, before, seat);
        id = s.id;
        after = seq(s);
        return ok({{"session", s.id}, {"seq", after}, {"events", events}, {"state", state_view(m, seat)}});
      });
      if (out.value("ok", false) && on_change_) on_change_(id, after);
      return out;
    }
    throw Failure{"bad-request", op.empty() ? "missing op" : "unknown op '" + op + "'"};
  } catch (const Failure& f) {
    return error(f.code, f.reason);
  } catch (const json::exception& e) {
    return error("bad-request", e.what());
  } catch (const DomainError& e) {
    return error("bad-request", e.what());
  } catch (const IllegalAction& e) {
    return error("illegal-action", e.what());
  }
}

json PontService::create(const json& req) {
  json cj = req.value("config", json::object());
  // Without an explicit seed nobody, including the creator, can predict the deal.
  if (cj.is_object() && !cj.contains("seed")) cj["seed"] = std::random_device{}() * 4294967296ull + std::random_device{}();
  GameConfig cfg = config_from_json(cj);
  std::vector<SeatKind> kinds;
  if (req.contains("seats")) {
    for (const auto& k : req["seats"]) kinds.push_back(parse_kind(k.get<std::string>()));
  } else {
    kinds.assign(cfg.players, SeatKind::kBot);
    kinds[0] = SeatKind::kHuman;
  }
  if (static_cast<int>(kinds.size()) != cfg.players) throw Failure{"bad-request", "one seat kind per player"};
  auto s = std::make_unique<Session>();
  s->seats = kinds;
  s->joined.assign(kinds.size(), false);
  s->match = std::make_unique<Match>(cfg);
  Session* raw = s.get();
  {
    std::unique_lock lk(mu_);
    s->id = "s" + std::to_string(next_id_++);
    sessions_[s->id] = std::move(s);
  }
  std::uint64_t n;
  {
    std::lock_guard lk(raw->mu);
    run_bots(*raw);
    persist(*raw);
    n = seq(*raw);
  }
  if (on_change_) on_change_(raw->id, n);
  json seats = json::array();
  for (auto k : kinds) seats.push_back(kind_name(k));
  return ok({{"session", raw->id}, {"seq", n}, {"seats", seats}});
}

json PontService::with_session(const json& req, const std::function<json(Session&)>& fn) {
  std::string id = req.value("session", "");
  Session* s = nullptr;
  {
    std::shared_lock lk(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Failure{"unknown-session", "no session '" + id + "'"};
    s = it->second.get();
  }
  std::lock_guard lk(s->mu);
  return fn(*s);
}

void PontService::run_bots(Session& s) {
  Match& m = *s.match;
  while (!m.game().over() && s.seats[m.game().controller(m.game().to_act())] == SeatKind::kBot) m.bot_step();
}

void PontService::persist(Session& s) {
  if (opts_.data_dir.empty()) return;
  auto path = std::filesystem::path(opts_.data_dir) / (s.id + ".jsonl");
  std::ofstream f(path, std::ios::app);
  if (!f) throw DomainError("cannot write " + path.string());
  if (s.persisted == 0) {
    json seats = json::array();
    for (auto k : s.seats) seats.push_back(kind_name(k));
    f << json{{"v", kProtocolVersion}, {"event", {{"type", "session"}, {"id", s.id}, {"seats", seats}}}}.dump() << '\n';
  }
  const auto& log = s.match->log();
  for (std::size_t i = s.persisted; i < log.size(); ++i) f << log[i].dump() << '\n';
  f.flush();
  s.persisted = log.size();
}

std::unique_ptr<Match> PontService::load_log(const std::string& path, std::vector<SeatKind>* seats) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read " + path);
  std::string line;
  std::vector<json> events;
  std::size_t n = 0;
  while (std::getline(f, line)) {
    ++n;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), n);
    }
    if (n == 1) {
      const json& e = j.at("event");
      if (e.value("type", "") != "session") throw ParseError("session header expected", 1);
      if (seats) {
        seats->clear();
        for (const auto& k : e.at("seats")) seats->push_back(parse_kind(k.get<std::string>()));
      }
      continue;
    }
    events.push_back(std::move(j));
  }
  return std::make_unique<Match>(Match::replay(events));
}

void PontService::load_all() {
  for (const auto& entry : std::filesystem::directory_iterator(opts_.data_dir)) {
    if (entry.path().extension() != ".jsonl") continue;
    auto s = std::make_unique<Session>();
    s->id = entry.path().stem().string();
    try {
      s->match = load_log(entry.path().string(), &s->seats);
    } catch (const Failure& f) {
      throw DomainError(entry.path().string() + ": " + f.reason);
    }
    s->joined.assign(s->seats.size(), false);
    s->persisted = s->match->log().size();
    if (s->id.size() > 1 && s->id[0] == 's') {
      try {
        next_id_ = std::max(next_id_, std::stoi(s->id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
    sessions_[s->id] = std::move(s);
  }
}

}  // namespace mrt::service
