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

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <condition_variable>
#include <list>
#include <set>
#include <thread>

#include <httplib.h>

#include "mrt/core/error.hpp"
#include "mrt/service/service.hpp"

namespace mrt::service {

using nlohmann::json;

namespace {

int status_for(const json& r) {
  if (r.value("ok", false)) return 200;
  std::string code = r["error"].value("code", "");
  if (code == "unknown-session") return 404;
  if (code == "stale-seq") return 409;
  if (code == "illegal-action") return 422;
  return 400;
}

void send_all(int fd, const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    ssize_t n = ::send(fd, s.data() + off, s.size() - off, MSG_NOSIGNAL);
    if (n <= 0) return;
    off += static_cast<std::size_t>(n);
  }
}

// Listening TCP socket on host:port, or -1.
int listen_on(const std::string& host, int port) {
  addrinfo hints{}, *res = nullptr;
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0) return -1;
  int fd = ::socket(res->ai_family, res->ai_socktype, 0);
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (fd < 0 || ::bind(fd, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd, 16) != 0) {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  return fd;
}

}  // namespace

struct Server::Impl {
  struct Client {
    int fd = -1;
    std::mutex write_mu;
    std::set<std::string> subs;
    std::mutex subs_mu;
    std::thread th;
  };

  PontService& svc;
  std::string host;
  int requested;
  int port = 0;
  httplib::Server http;
  int stream_fd = -1;
  std::atomic<bool> stopping{false};
  mutable std::mutex mu;
  mutable std::condition_variable cv;
  bool ready = false;
  std::list<Client> clients;

  Impl(PontService& s, std::string h, int p) : svc(s), host(std::move(h)), requested(p) {}

  json call(json req) {
    req["v"] = kProtocolVersion;
    return svc.handle(req);
  }

  void reply(httplib::Response& res, const json& r) {
    res.status = status_for(r);
    res.set_content(r.dump(), "application/json");
  }

  json body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json j = json::parse(req.body, nullptr, false);
    return j.is_discarded() ? json() : j;
  }

  void routes() {
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    http.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.Post("/api/v1/message", [this](const httplib::Request& q, httplib::Response& res) {
      reply(res, svc.handle(body(q)));
    });
    http.Get("/api/v1/sessions", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, call({{"op", "list"}}));
    });
    http.Post("/api/v1/sessions", [this](const httplib::Request& q, httplib::Response& res) {
      json b = body(q);
      if (!b.is_object()) return reply(res, svc.handle(b));
      b["op"] = "create";
      reply(res, call(b));
    });
    auto seat_query = [](const httplib::Request& q) -> json {
      if (!q.has_param("seat")) return -1;
      try {
        return std::stoi(q.get_param_value("seat"));
      } catch (const std::exception&) {
        return "bad";
      }
    };
    for (const char* op : {"state", "legal"}) {
      http.Get(std::string("/api/v1/sessions/:id/") + op,
               [this, op, seat_query](const httplib::Request& q, httplib::Response& res) {
                 reply(res, call({{"op", op}, {"session", q.path_params.at("id")}, {"seat", seat_query(q)}}));
               });
    }
    for (const char* op : {"join", "submit", "next"}) {
      http.Post(std::string("/api/v1/sessions/:id/") + op, [this, op](const httplib::Request& q, httplib::Response& res) {
        json b = body(q);
        if (!b.is_object()) return reply(res, svc.handle(b));
        b["op"] = op;
        b["session"] = q.path_params.at("id");
        reply(res, call(b));
      });
    }
  }

  void push(const std::string& id, std::uint64_t seq) {
    std::string line = json{{"v", kProtocolVersion}, {"type", "update"}, {"session", id}, {"seq", seq}}.dump() + "\n";
    std::lock_guard lk(mu);
    for (auto& c : clients) {
      bool want;
      {
        std::lock_guard sl(c.subs_mu);
        want = c.subs.count(id) > 0;
      }
      if (!want) continue;
      std::lock_guard wl(c.write_mu);
      send_all(c.fd, line);
    }
  }

  void serve_client(Client& c) {
    std::string buf;
    char tmp[4096];
    while (!stopping) {
      pollfd p{c.fd, POLLIN, 0};
      int r = ::poll(&p, 1, 100);
      if (r < 0) break;
      if (r == 0) continue;
      ssize_t n = ::recv(c.fd, tmp, sizeof tmp, 0);
      if (n <= 0) break;
      buf.append(tmp, static_cast<std::size_t>(n));
      std::size_t nl;
      while ((nl = buf.find('\n')) != std::string::npos) {
        std::string line = buf.substr(0, nl);
        buf.erase(0, nl + 1);
        if (line.empty() || line == "\r") continue;
        json req = json::parse(line, nullptr, false);
        json out;
        if (req.is_object() && req.value("op", "") == "subscribe") {
          std::string id = req.value("session", "");
          out = svc.handle({{"v", req.value("v", 0)}, {"op", "state"}, {"session", id}, {"seat", -1}});
          if (out.value("ok", false)) {
            std::lock_guard sl(c.subs_mu);
            c.subs.insert(id);
            out = {{"v", kProtocolVersion}, {"ok", true}, {"subscribed", id}, {"seq", out["seq"]}};
          }
        } else {
          out = svc.handle(req.is_discarded() ? json() : req);
        }
        if (req.is_object() && req.contains("id")) out["id"] = req["id"];
        std::lock_guard wl(c.write_mu);
        send_all(c.fd, out.dump() + "\n");
      }
    }
    ::shutdown(c.fd, SHUT_RDWR);
  }

  void accept_loop() {
    while (!stopping) {
      pollfd p{stream_fd, POLLIN, 0};
      int r = ::poll(&p, 1, 100);
      if (r <= 0) continue;
      int fd = ::accept(stream_fd, nullptr, nullptr);
      if (fd < 0) continue;
      std::lock_guard lk(mu);
      Client& c = clients.emplace_back();
      c.fd = fd;
      c.th = std::thread([this, &c] { serve_client(c); });
    }
  }
};

Server::Server(PontService& svc, std::string host, int port) : impl_(std::make_unique<Impl>(svc, std::move(host), port)) {}

Server::~Server() {
  stop();
}

int Server::http_port() const {
  std::lock_guard lk(impl_->mu);
  return impl_->port;
}

bool Server::wait_ready(int timeout_ms) const {
  std::unique_lock lk(impl_->mu);
  return impl_->cv.wait_for(lk, std::chrono::milliseconds(timeout_ms), [&] { return impl_->ready; });
}

void Server::run() {
  Impl& m = *impl_;
  m.routes();
  int port = m.requested;
  for (int attempt = 0; attempt < 50; ++attempt) {
    if (m.requested == 0) {
      port = m.http.bind_to_any_port(m.host);
      if (port <= 0) break;
    } else if (!m.http.bind_to_port(m.host, port)) {
      throw DomainError("cannot listen on " + m.host + ":" + std::to_string(port));
    }
    m.stream_fd = listen_on(m.host, port + 1);
    if (m.stream_fd >= 0) break;
    if (m.requested != 0) throw DomainError("cannot listen on " + m.host + ":" + std::to_string(port + 1));
    m.http.stop();
  }
  if (m.stream_fd < 0) throw DomainError("no free port pair on " + m.host);
  m.svc.on_change([&m](const std::string& id, std::uint64_t seq) { m.push(id, seq); });

  std::thread acceptor([&m] { m.accept_loop(); });
  {
    std::lock_guard lk(m.mu);
    m.port = port;
    m.ready = true;
  }
  m.cv.notify_all();
  m.http.listen_after_bind();

  m.stopping = true;
  acceptor.join();
  m.svc.on_change(nullptr);
  std::list<Impl::Client> done;
  {
    std::lock_guard lk(m.mu);
    done.splice(done.end(), m.clients);
  }
  for (auto& c : done) {
    if (c.th.joinable()) c.th.join();
    ::close(c.fd);
  }
  ::close(m.stream_fd);
  m.stream_fd = -1;
}

void Server::stop() {
  impl_->stopping = true;
  impl_->http.stop();
}

}  // namespace mrt::service
