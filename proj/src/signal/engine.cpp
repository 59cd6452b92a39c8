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
#include "mrt/signal/engine.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "mrt/core/error.hpp"

namespace mrt::signal {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kLongOnly: return "long-only";
    case Mode::kShortOnly: return "short-only";
    case Mode::kLongShort: return "long-short";
  }
  return "";
}

std::string_view to_string(Trend t) { return t == Trend::kPro ? "pro" : "counter"; }
std::string_view to_string(Direction d) { return d == Direction::kBuy ? "buy" : "sell"; }

std::string_view to_string(SignalKind k) {
  switch (k) {
    case SignalKind::kBidIncrease: return "bid-increase";
    case SignalKind::kStartBid: return "start-bid";
    case SignalKind::kCurveIntersection: return "curve-intersection";
  }
  return "";
}

Mode parse_mode(std::string_view s) {
  if (s == "long-only") return Mode::kLongOnly;
  if (s == "short-only") return Mode::kShortOnly;
  if (s == "long-short") return Mode::kLongShort;
  throw DomainError("unknown mode: " + std::string(s));
}

Trend parse_trend(std::string_view s) {
  if (s == "pro") return Trend::kPro;
  if (s == "counter") return Trend::kCounter;
  throw DomainError("unknown trend: " + std::string(s));
}

void EngineConfig::validate() const {
  if (categories.empty()) throw DomainError("categories must not be empty");
  for (int c : categories) {
    if (c < 1 || c > bids::kNumCategories) throw DomainError("categories must lie in 1..7");
  }
  if (!(beta >= 1) || !std::isfinite(beta)) throw DomainError("beta must be >= 1");
  if (!(decel_threshold >= 0) || !std::isfinite(decel_threshold)) throw DomainError("decel_threshold must be >= 0");
  if (!(accel_threshold >= 0) || !std::isfinite(accel_threshold)) throw DomainError("accel_threshold must be >= 0");
  if (!(kappa > 0 && kappa <= 1)) throw DomainError("kappa must lie in (0, 1]");
  if (!(shift >= 0) || !std::isfinite(shift)) throw DomainError("shift must be >= 0");
  if (!(depth_cap > 0) || !std::isfinite(depth_cap)) throw DomainError("depth_cap must be > 0");
  if (!(step_hours > 0) || !std::isfinite(step_hours)) throw DomainError("step_hours must be > 0");
}

double termination_value(const TerminationCurve& curve, double t_hours) {
  const double dt = t_hours - curve.t0;
  if (dt < -1e-9) throw DomainError("termination curve evaluated before its anchor");
  const double rise = dt > 1e-9 ? curve.kappa * curve.b * bids::g(dt, curve.c) / curve.beta : 0.0;
  const double pct = rise - curve.shift;
  return curve.direction == Direction::kBuy ? curve.p0 * (1 + pct / 100) : curve.p0 * (1 - pct / 100);
}

SignalEngine::SignalEngine(EngineConfig config, std::string symbol)
    : config_(std::move(config)), symbol_(std::move(symbol)) {
  config_.validate();
  max_history_ = static_cast<std::size_t>(std::lround(config_.depth_cap / config_.step_hours)) + 3;
}

void SignalEngine::append(const Quote& q) {
  if (!(q.price > 0) || !std::isfinite(q.price)) throw DomainError("quote price must be positive");
  if (last_time_ && q.time < *last_time_) throw DomainError("quote out of time order");
  last_time_ = q.time;
  prices_.push_back(q.price);
  if (prices_.size() > max_history_) prices_.pop_front();
  ++step_;
}

void SignalEngine::prime(const Quote& q) { append(q); }

std::optional<SignalEngine::Candidate> SignalEngine::best_bid(Direction d) const {
  std::optional<Candidate> best;
  const double p_now = prices_.back();
  const double sgn = d == Direction::kBuy ? 1.0 : -1.0;
  for (int c : config_.categories) {
    const double prime = bids::prime_interval(c);
    for (int m = 1; m * prime <= config_.depth_cap + 1e-9; ++m) {
      const long k = std::lround(m * prime / config_.step_hours);
      if (k == 0) continue;
      if (static_cast<std::size_t>(k) >= prices_.size()) break;
      const double p_then = prices_[prices_.size() - 1 - static_cast<std::size_t>(k)];
      if (!(sgn * (p_now - p_then) > 0)) continue;
      const int b = bids::bid_backward(p_now, p_then, m * prime, c, config_.beta);
      if (b < 1) continue;
      const bids::TwoBid bid{b, c, m};
      if (!best || bids::ranks_above(bid, best->bid)) best = Candidate{bid, k, p_then};
    }
  }
  return best;
}

void SignalEngine::emit(Direction d, SignalKind kind, const bids::TwoBid& bid, std::vector<Signal>& out) {
  Side& own = side(d);
  Side& other = side(opposite(d));
  ++own.level;
  other = Side{};
  Signal s;
  s.direction = d;
  s.level = own.level;
  s.kind = kind;
  s.time = *last_time_;
  s.step = step_ - 1;
  s.price = prices_.back();
  s.bid = bid;
  out.push_back(s);
}

std::vector<Signal> SignalEngine::step(const Quote& q) {
  append(q);
  std::vector<Signal> out;
  const double t = hours_at(step_ - 1);
  const double p = prices_.back();

  for (Direction d : {Direction::kBuy, Direction::kSell}) {
    const auto& curve = side(d).curve;
    if (!curve) continue;
    const double v = termination_value(*curve, t);
    const bool crossed = d == Direction::kBuy ? p < v : p > v;
    if (crossed) {
      const bids::TwoBid bid{curve->b, curve->c, 1};
      side(d).curve.reset();
      emit(opposite(d), SignalKind::kCurveIntersection, bid, out);
    }
  }

  if (prices_.size() >= 3) {
    const std::size_t n = prices_.size();
    const double p1 = prices_[n - 2], p2 = prices_[n - 3];
    const double acc = ((p - p1) - (p1 - p2)) / p2 * 100;
    for (Direction d : {Direction::kBuy, Direction::kSell}) {
      const double signed_acc = d == Direction::kBuy ? acc : -acc;
      const bool decel = signed_acc < -config_.decel_threshold;
      const bool accel = signed_acc > config_.accel_threshold;
      if (!decel && !accel) continue;
      const auto cand = best_bid(d);
      if (!cand) continue;
      Side& s = side(d);
      auto& slot = decel ? s.top : s.start;
      if (slot && !bids::ranks_above(cand->bid, *slot)) continue;
      slot = cand->bid;
      if (!s.curve || bids::ranks_above(cand->bid, bids::TwoBid{s.curve->b, s.curve->c, 1})) {
        s.curve = TerminationCurve{cand->bid.b, cand->bid.c, hours_at(step_ - 1 - cand->lookback), cand->p_then,
                                   d, config_.kappa, config_.shift, config_.beta};
      }
      emit(d, decel ? SignalKind::kBidIncrease : SignalKind::kStartBid, cand->bid, out);
    }
  }

  if (config_.trend == Trend::kCounter) {
    for (auto& s : out) s.direction = opposite(s.direction);
  }
  return out;
}

std::vector<Signal> run_engine(const EngineConfig& config, const std::vector<Quote>& quotes) {
  SignalEngine engine(config);
  std::vector<Signal> all;
  for (const auto& q : quotes) {
    auto s = engine.step(q);
    all.insert(all.end(), s.begin(), s.end());
  }
  return all;
}

void write_signals_csv(std::ostream& out, const std::string& symbol, const std::vector<Signal>& signals) {
  out << "time,symbol,direction,level,kind,price\n";
  char buf[48];
  for (const auto& s : signals) {
    std::snprintf(buf, sizeof buf, "%.10g", s.price);
    out << format_iso8601(s.time) << ',' << symbol << ',' << to_string(s.direction) << ',' << s.level << ','
        << to_string(s.kind) << ',' << buf << '\n';
  }
}

Trade PositionBook::close(const Position& p, Timestamp time, long step, double price) const {
  Trade t;
  t.symbol = symbol_;
  t.direction = p.direction;
  t.level = p.level;
  t.entry_time = p.entry_time;
  t.entry_step = p.entry_step;
  t.entry_price = p.entry_price;
  t.exit_time = time;
  t.exit_step = step;
  t.exit_price = price;
  const double diff = p.direction == Direction::kBuy ? price - p.entry_price : p.entry_price - price;
  t.return_pct = 100 * diff / p.entry_price;
  t.duration_days = static_cast<double>(step - p.entry_step) * step_hours_ / bids::hours::kDay;
  return t;
}

std::vector<Trade> PositionBook::apply(const std::vector<Signal>& signals) {
  std::vector<Trade> trades;
  for (const auto& s : signals) {
    std::vector<Position> keep;
    for (const auto& p : open_) {
      if (p.direction != s.direction) {
        trades.push_back(close(p, s.time, s.step, s.price));
      } else {
        keep.push_back(p);
      }
    }
    open_ = std::move(keep);
    if (s.kind == SignalKind::kCurveIntersection) continue;
    const bool allowed = s.direction == Direction::kBuy ? mode_ != Mode::kShortOnly : mode_ != Mode::kLongOnly;
    if (!allowed) continue;
    if (s.level > kMaxLevels) {
      ++skipped_;
      continue;
    }
    open_.push_back(Position{s.direction, s.level, s.time, s.step, s.price});
  }
  return trades;
}

std::vector<Trade> PositionBook::close_all(Timestamp time, long step, double price) {
  std::vector<Trade> trades;
  for (const auto& p : open_) trades.push_back(close(p, time, step, price));
  open_.clear();
  return trades;
}

}  // namespace mrt::signal
