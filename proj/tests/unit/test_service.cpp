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

#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <filesystem>
#include <random>
#include <thread>

#include <httplib.h>

#include "mrt/pont/bot.hpp"
#include "mrt/service/service.hpp"

using namespace mrt::pont;
using namespace mrt::service;
using nlohmann::json;

namespace {

json req(const std::string& op, json extra = json::object()) {
  extra["v"] = 1;
  extra["op"] = op;
  return extra;
}

std::string temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("mrt_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

// Collect every string value in a JSON tree.
void strings(const json& j, std::set<std::string>& out) {
  if (j.is_string()) out.insert(j.get<std::string>());
  if (j.is_structured())
    for (const auto& v : j) strings(v, out);
}

CardSet parse_cards_json(const json& a) {
  CardSet m = 0;
  for (const auto& c : a) m |= parse_card(c.get<std::string>()).bit();
  return m;
}

// Controller of the seat to act, read from a spectator view.
int controller(PontService& svc, const std::string& id) {
  return svc.handle(req("state", {{"session", id}, {"seat", -1}}))["state"]["controller"].get<int>();
}

// Play random legal moves through the service until the game ends; calls
// check(seat) before each move.
template <class F>
void play_random(PontService& svc, const std::string& id, std::uint64_t seed, F&& check) {
  std::mt19937_64 rng(seed);
  for (int guard = 0; guard < 500; ++guard) {
    json st = svc.handle(req("state", {{"session", id}, {"seat", -1}}));
    if (st["state"]["phase"] == "over") return;
    int who = st["state"]["controller"].get<int>();
    check(who);
    json legal = svc.handle(req("legal", {{"session", id}, {"seat", who}}))["legal"];
    REQUIRE(!legal.empty());
    json a = legal[rng() % legal.size()];
    json r = svc.handle(req("submit", {{"session", id}, {"seat", who}, {"seq", st["seq"]}, {"action", a}}));
    REQUIRE_MESSAGE(r["ok"].get<bool>(), r.dump());
  }
  FAIL("game did not end");
}

}  // namespace

TEST_CASE("service: create, join and legal bids match the engine") {
  PontService svc;
  json c = svc.handle(req("create", {{"config", {{"players", 3}, {"seed", 11}}}, {"seats", {"human", "human", "bot"}}}));
  REQUIRE(c["ok"].get<bool>());
  std::string id = c["session"];
  CHECK(svc.sessions() == std::vector<std::string>{id});
  json j0 = svc.handle(req("join", {{"session", id}, {"seat", 0}}));
  json j1 = svc.handle(req("join", {{"session", id}, {"seat", 1}}));
  REQUIRE(j0["ok"].get<bool>());
  REQUIRE(j1["ok"].get<bool>());
  CHECK(svc.handle(req("join", {{"session", id}, {"seat", 2}}))["error"]["code"] == "illegal-action");

  // Rebuild the engine state from the same config and compare.
  GameConfig cfg;
  cfg.players = 3;
  cfg.seed = 11;
  Match m(cfg);
  while (!m.game().over() && m.game().controller(m.game().to_act()) == 2) m.bot_step();
  int to_act = m.game().to_act();
  for (int seat = 0; seat < 2; ++seat) {
    json legal = svc.handle(req("legal", {{"session", id}, {"seat", seat}}))["legal"];
    if (seat != to_act) {
      CHECK(legal.empty());
      continue;
    }
    auto want = m.game().legal_actions();
    REQUIRE(legal.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(action_from_json(legal[i]) == want[i]);
      if (want[i].type == ActionType::kBid) CHECK(legal[i]["name"] == bid_name(want[i].bid, false));
    }
  }
  json view = svc.handle(req("state", {{"session", id}, {"seat", 0}}))["state"];
  CHECK(view["hands"][0]["cards"].size() == 6);
  CHECK(view["hands"][1]["cards"].empty());
  CHECK(view["hands"][1]["count"] == 6);
}

TEST_CASE("service: error codes") {
  PontService svc;
  CHECK(svc.handle(json::array())["error"]["code"] == "bad-request");
  CHECK(svc.handle({{"op", "list"}})["error"]["code"] == "bad-request");
  CHECK(svc.handle(req("dance"))["error"]["code"] == "bad-request");
  CHECK(svc.handle(req("state", {{"session", "nope"}, {"seat", 0}}))["error"]["code"] == "unknown-session");
  CHECK(svc.handle(req("create", {{"config", {{"players", 7}}}}))["error"]["code"] == "bad-request");
  CHECK(svc.handle(req("create", {{"config", {{"players", 3}}}, {"seats", {"human"}}}))["error"]["code"] ==
        "bad-request");
  json c = svc.handle(req("create", {{"config", {{"players", 3}, {"seed", 2}}}, {"seats", {"human", "human", "human"}}}));
  std::string id = c["session"];
  std::uint64_t seq = c["seq"];
  int who = controller(svc, id);
  json wrong = req("submit", {{"session", id}, {"seat", (who + 1) % 3}, {"seq", seq}, {"action", {{"type", "pass"}}}});
  CHECK(svc.handle(wrong)["error"]["code"] == "illegal-action");
  json junk = req("submit", {{"session", id}, {"seat", who}, {"seq", seq}, {"action", {{"type", "fly"}}}});
  CHECK(svc.handle(junk)["error"]["code"] == "illegal-action");
  json bad_bid = req("submit", {{"session", id}, {"seat", who}, {"seq", seq}, {"action", {{"type", "bid"}, {"bid", "9/9"}}}});
  CHECK(svc.handle(bad_bid)["error"]["code"] == "illegal-action");
  CHECK(svc.handle(req("state", {{"session", id}, {"seat", who}}))["seq"] == seq);
}

TEST_CASE("service: stale seq is rejected without a state change") {
  PontService svc;
  json c = svc.handle(req("create", {{"config", {{"players", 4}, {"seed", 5}}}, {"seats", {"human", "human", "human", "human"}}}));
  std::string id = c["session"];
  std::uint64_t seq = c["seq"];
  int who = controller(svc, id);
  json a = svc.handle(req("legal", {{"session", id}, {"seat", who}}))["legal"][0];
  json ok = svc.handle(req("submit", {{"session", id}, {"seat", who}, {"seq", seq}, {"action", a}}));
  REQUIRE(ok["ok"].get<bool>());
  CHECK(ok["seq"] == seq + 1);
  CHECK(ok["events"].size() == 1);

  json before = svc.handle(req("state", {{"session", id}, {"seat", -1}}));
  int next = before["state"]["controller"];
  json b = svc.handle(req("legal", {{"session", id}, {"seat", next}}))["legal"][0];
  json stale = svc.handle(req("submit", {{"session", id}, {"seat", next}, {"seq", seq}, {"action", b}}));
  CHECK(stale["error"]["code"] == "stale-seq");
  CHECK(svc.handle(req("state", {{"session", id}, {"seat", -1}})) == before);
}

TEST_CASE("service: bots act automatically and match the bot policy") {
  std::string dir = temp_dir("bots");
  std::string id;
  {
    PontService svc({dir});
    json c = svc.handle(req("create", {{"config", {{"players", 4}, {"seed", 21}, {"partnerships", true}}},
                                       {"seats", {"bot", "bot", "bot", "bot"}}}));
    REQUIRE(c["ok"].get<bool>());
    id = c["session"];
    json st = svc.handle(req("state", {{"session", id}, {"seat", -1}}))["state"];
    CHECK(st["phase"] == "over");
  }
  GameConfig cfg;
  cfg.players = 4;
  cfg.seed = 21;
  cfg.partnerships = true;
  Match m(cfg);
  while (!m.game().over()) {
    Action want = bot_action(m.game(), m.bot_seed());
    CHECK(m.bot_step() == want);
  }
  std::vector<SeatKind> seats;
  auto loaded = PontService::load_log(dir + "/" + id + ".jsonl", &seats);
  CHECK(seats == std::vector<SeatKind>(4, SeatKind::kBot));
  CHECK(loaded->log() == m.log());
  std::filesystem::remove_all(dir);
}

TEST_CASE("service: views never reveal hidden cards") {
  struct Setup {
    json config;
    int players;
  };
  std::vector<Setup> setups = {
      {{{"players", 3}, {"seed", 1}}, 3},
      {{{"players", 4}, {"seed", 2}, {"partnerships", true}}, 4},
      {{{"players", 2}, {"seed", 3}}, 2},
      {{{"players", 3}, {"seed", 4}, {"variant", "poker"}}, 3},
      {{{"players", 4}, {"seed", 5}, {"variant", "basic"}}, 4},
  };
  std::string dir = temp_dir("redact");
  int checked = 0, discards_seen = 0;
  for (const auto& s : setups) {
    PontService svc({dir});
    json seats = json::array();
    for (int i = 0; i < s.players; ++i) seats.push_back("human");
    std::string id = svc.handle(req("create", {{"config", s.config}, {"seats", seats}}))["session"];
    for (int g = 0; g < 4; ++g) {
      play_random(svc, id, 100 + g, [&](int) {
        // The persisted log gives the full engine state to compare against.
        auto m = PontService::load_log(dir + "/" + id + ".jsonl", nullptr);
        const GameState& gs = m->game();
        for (int viewer = -1; viewer < s.players; ++viewer) {
          json v = svc.handle(req("state", {{"session", id}, {"seat", viewer}}))["state"];
          CardSet hidden = gs.stock();
          for (int t = 0; t < s.players; ++t) {
            CHECK(parse_cards_json(v["hands"][t]["cards"]) == gs.visible_hand(viewer, t));
            hidden |= gs.hand(t) & ~gs.visible_hand(viewer, t);
            if (t != viewer) hidden |= gs.discards(t);
          }
          std::set<std::string> seen;
          strings(v, seen);
          for (Card c : to_vector(hidden)) CHECK_MESSAGE(seen.count(to_string(c)) == 0, to_string(c));
          CHECK_FALSE(v["config"].contains("seed"));
          json evs = svc.handle(req("events", {{"session", id}, {"seat", viewer}, {"from", 0}}))["events"];
          CHECK(evs.size() == m->log().size());
          for (const auto& e : evs) {
            if (e["event"]["type"] == "config") CHECK_FALSE(e["event"]["config"].contains("seed"));
            if (e["event"]["type"] == "action" && e["event"]["action"]["type"] == "discard") {
              bool own = e["event"]["action"]["seat"] == viewer;
              CHECK(e["event"]["action"].contains("card") == own);
              discards_seen += own ? 0 : 1;
            }
          }
          ++checked;
        }
      });
      json st = svc.handle(req("state", {{"session", id}, {"seat", 0}}));
      json n = svc.handle(req("next", {{"session", id}, {"seat", 0}, {"seq", st["seq"]}}));
      REQUIRE(n["ok"].get<bool>());
    }
  }
  CHECK(checked > 500);
  CHECK(discards_seen > 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("service: persisted sessions replay on restart") {
  std::string dir = temp_dir("persist");
  std::string id;
  std::vector<json> views;
  {
    PontService svc({dir});
    svc.handle(req("create", {{"config", {{"players", 3}, {"seed", 8}}}, {"seats", {"bot", "bot", "bot"}}}));
    id = svc.handle(req("create", {{"config", {{"players", 3}, {"seed", 9}}}, {"seats", {"human", "bot", "human"}}}))["session"];
    int moves = 0;
    play_random(svc, id, 7, [&](int) { ++moves; });
    CHECK(moves > 0);
    json st = svc.handle(req("state", {{"session", id}, {"seat", 0}}));
    svc.handle(req("next", {{"session", id}, {"seat", 0}, {"seq", st["seq"]}}));
    for (int seat = -1; seat < 3; ++seat) views.push_back(svc.handle(req("state", {{"session", id}, {"seat", seat}})));
  }
  PontService again({dir});
  CHECK(again.sessions().size() == 2);
  for (int seat = -1; seat < 3; ++seat)
    CHECK(again.handle(req("state", {{"session", id}, {"seat", seat}})) == views[seat + 1]);
  // New sessions do not collide with loaded ones.
  std::string fresh = again.handle(req("create", {{"config", {{"players", 2}}}}))["session"];
  CHECK(fresh == "s3");
  std::filesystem::remove_all(dir);
}

TEST_CASE("service: HTTP and stream round trip") {
  PontService svc;
  Server server(svc, "127.0.0.1", 0);
  std::thread th([&] { server.run(); });
  REQUIRE(server.wait_ready(5000));
  int port = server.http_port();

  httplib::Client http("127.0.0.1", port);
  auto created = http.Post("/api/v1/sessions",
                           json{{"config", {{"players", 3}, {"seed", 4}}}, {"seats", {"human", "human", "human"}}}.dump(),
                           "application/json");
  REQUIRE(created);
  CHECK(created->status == 200);
  json c = json::parse(created->body);
  std::string id = c["session"];

  auto missing = http.Get("/api/v1/sessions/zz/state?seat=0");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  // Subscribe on the stream channel.
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(server.stream_port()));
  ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  REQUIRE(::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  std::string pending;
  auto read_line = [&]() {
    char buf[4096];
    while (pending.find('\n') == std::string::npos) {
      ssize_t n = ::recv(fd, buf, sizeof buf, 0);
      if (n <= 0) return json();
      pending.append(buf, static_cast<std::size_t>(n));
    }
    auto nl = pending.find('\n');
    json j = json::parse(pending.substr(0, nl));
    pending.erase(0, nl + 1);
    return j;
  };
  std::string sub = json{{"v", 1}, {"op", "subscribe"}, {"session", id}}.dump() + "\n";
  ::send(fd, sub.data(), sub.size(), 0);
  json ack = read_line();
  CHECK(ack["ok"].get<bool>());
  CHECK(ack["seq"] == c["seq"]);

  auto st = http.Get("/api/v1/sessions/" + id + "/state?seat=-1");
  REQUIRE(st);
  json view = json::parse(st->body);
  int who = view["state"]["controller"];
  auto lg = http.Get("/api/v1/sessions/" + id + "/legal?seat=" + std::to_string(who));
  json legal = json::parse(lg->body)["legal"];
  REQUIRE(!legal.empty());
  auto sub_res = http.Post("/api/v1/sessions/" + id + "/submit",
                           json{{"seat", who}, {"seq", view["seq"]}, {"action", legal[0]}}.dump(), "application/json");
  REQUIRE(sub_res);
  CHECK(sub_res->status == 200);
  json update = read_line();
  CHECK(update["type"] == "update");
  CHECK(update["session"] == id);
  CHECK(update["seq"] == view["seq"].get<int>() + 1);

  // Stale submit over HTTP is a 409.
  auto stale = http.Post("/api/v1/sessions/" + id + "/submit",
                         json{{"seat", who}, {"seq", view["seq"]}, {"action", legal[0]}}.dump(), "application/json");
  CHECK(stale->status == 409);

  // Requests on the stream channel use the same schema.
  std::string q = json{{"v", 1}, {"op", "state"}, {"session", id}, {"seat", -1}, {"id", 42}}.dump() + "\n";
  ::send(fd, q.data(), q.size(), 0);
  json reply = read_line();
  CHECK(reply["id"] == 42);
  CHECK(reply["seq"] == update["seq"]);
  ::close(fd);

  server.stop();
  th.join();
}
