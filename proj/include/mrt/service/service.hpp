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
// Pont sessions behind one JSON message handler. HTTP routes and the
// line-oriented TCP channel both feed handle(); the schema is the same.
//
// Request:  {"v":1, "op":"create|join|state|legal|submit|next|events|list", ...}
// Response: {"v":1, "ok":true, ...} or
//           {"v":1, "ok":false, "error":{"code":..., "reason":...}}

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrt/pont/match.hpp"

namespace mrt::service {

inline constexpr int kProtocolVersion = 1;
inline constexpr const char* kDataDirEnv = "MRT_PONT_DATA";

enum class SeatKind { kHuman, kBot };

struct ServiceOptions {
  std::string data_dir;  // empty: nothing persisted
};

// Everything `seat` may know about the session; -1 views as a spectator.
nlohmann::json state_view(const pont::Match& m, int seat);
nlohmann::json legal_view(const pont::GameState& g, int seat);
nlohmann::json bid_json(const pont::PontBid& b, bool two_sided);

class PontService {
 public:
  explicit PontService(ServiceOptions opts = {});

  nlohmann::json handle(const nlohmann::json& request);

  // Called after a session changes, with its id and new sequence number.
  void on_change(std::function<void(const std::string&, std::uint64_t)> cb);

  std::vector<std::string> sessions() const;
  // Replays one persisted session file; exposed for tests.
  static std::unique_ptr<pont::Match> load_log(const std::string& path, std::vector<SeatKind>* seats);

 private:
  struct Session {
    std::string id;
    std::vector<SeatKind> seats;
    std::vector<bool> joined;
    std::unique_ptr<pont::Match> match;
    std::size_t persisted = 0;  // log lines already written
    std::mutex mu;
  };

  nlohmann::json create(const nlohmann::json& req);
  nlohmann::json with_session(const nlohmann::json& req, const std::function<nlohmann::json(Session&)>& fn);
  void run_bots(Session& s);
  void persist(Session& s);
  std::uint64_t seq(const Session& s) const { return s.match->log().size(); }
  void load_all();

  ServiceOptions opts_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  int next_id_ = 1;
  std::function<void(const std::string&, std::uint64_t)> on_change_;
};

// Blocking servers. HTTP on `port`, newline-delimited JSON on `port + 1`.
// Port 0 picks a free adjacent pair. run() returns once stop() is called
// from another thread.
class Server {
 public:
  Server(PontService& svc, std::string host, int port);
  ~Server();
  void run();
  void stop();
  bool wait_ready(int timeout_ms) const;
  // Valid after wait_ready() succeeds.
  int http_port() const;
  int stream_port() const { return http_port() + 1; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mrt::service
