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
// Per-symbol signal state machine: top and start 2-bids, levels and
// termination curves.

#pragma once

#include <array>
#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrt/bids/two_bid.hpp"
#include "mrt/core/time.hpp"

namespace mrt::signal {

enum class Mode { kLongOnly, kShortOnly, kLongShort };
enum class Trend { kPro, kCounter };
enum class Direction { kBuy, kSell };
enum class SignalKind { kBidIncrease, kStartBid, kCurveIntersection };

std::string_view to_string(Mode m);
std::string_view to_string(Trend t);
std::string_view to_string(Direction d);
std::string_view to_string(SignalKind k);
Mode parse_mode(std::string_view s);
Trend parse_trend(std::string_view s);

inline Direction opposite(Direction d) { return d == Direction::kBuy ? Direction::kSell : Direction::kBuy; }

struct EngineConfig {
  Mode mode = Mode::kLongShort;
  Trend trend = Trend::kPro;
  std::vector<int> categories = {1, 3};
  double beta = 1.0;             // rescaling coefficient, >= 1
  double decel_threshold = 0.0;  // percent
  double accel_threshold = 0.25; // percent
  double kappa = 1.0;            // curve scale, (0, 1]
  double shift = 1.0;            // curve shift s, percent
  double depth_cap = bids::hours::kMonth;
  double step_hours = bids::hours::kDay / 3;  // three quotes per session

  // Throws DomainError naming the offending field.
  void validate() const;
};

struct Quote {
  Timestamp time = 0;
  double price = 0;
};

struct TerminationCurve {
  int b = 0;
  int c = 1;
  double t0 = 0;  // business hours
  double p0 = 0;
  Direction direction = Direction::kBuy;  // kBuy guards longs
  double kappa = 1;
  double shift = 0;
  double beta = 1;
};

// Long: p0 (1 + (kappa b g(t - t0, c) / beta - s) / 100). Short mirrors it.
// The g term is 0 at t = t0, so the curve starts exactly s percent away from p0.
double termination_value(const TerminationCurve& curve, double t_hours);

struct Signal {
  Direction direction = Direction::kBuy;
  int level = 1;
  SignalKind kind = SignalKind::kBidIncrease;
  Timestamp time = 0;
  long step = 0;        // index of the quote that produced it
  double price = 0;
  bids::TwoBid bid{};   // source bid; the curve's bid for intersections
};

class SignalEngine {
 public:
  explicit SignalEngine(EngineConfig config, std::string symbol = "");

  // Adds a quote to the history without touching bids, levels or curves.
  void prime(const Quote& q);
  // Processes one quote and returns the signals it produces.
  std::vector<Signal> step(const Quote& q);

  const EngineConfig& config() const { return config_; }
  const std::string& symbol() const { return symbol_; }
  long steps_seen() const { return step_; }
  const std::optional<TerminationCurve>& curve(Direction d) const { return side(d).curve; }
  const std::optional<bids::TwoBid>& top(Direction d) const { return side(d).top; }

 private:
  struct Candidate {
    bids::TwoBid bid;
    long lookback = 0;
    double p_then = 0;
  };
  struct Side {
    std::optional<bids::TwoBid> top;
    std::optional<bids::TwoBid> start;
    std::optional<TerminationCurve> curve;
    int level = 0;
  };

  void append(const Quote& q);
  std::optional<Candidate> best_bid(Direction d) const;
  void emit(Direction d, SignalKind kind, const bids::TwoBid& bid, std::vector<Signal>& out);
  Side& side(Direction d) { return sides_[d == Direction::kBuy ? 0 : 1]; }
  const Side& side(Direction d) const { return sides_[d == Direction::kBuy ? 0 : 1]; }
  double hours_at(long step) const { return static_cast<double>(step) * config_.step_hours; }

  EngineConfig config_;
  std::string symbol_;
  std::deque<double> prices_;
  std::size_t max_history_ = 0;
  long step_ = 0;  // number of quotes seen
  std::optional<Timestamp> last_time_;
  std::array<Side, 2> sides_{};
};

// Signals of a whole series, in order.
std::vector<Signal> run_engine(const EngineConfig& config, const std::vector<Quote>& quotes);

// time,symbol,direction,level,kind,price
void write_signals_csv(std::ostream& out, const std::string& symbol, const std::vector<Signal>& signals);

struct Position {
  Direction direction = Direction::kBuy;
  int level = 1;
  Timestamp entry_time = 0;
  long entry_step = 0;
  double entry_price = 0;
};

struct Trade {
  std::string symbol;
  Direction direction = Direction::kBuy;
  int level = 1;
  Timestamp entry_time = 0, exit_time = 0;
  long entry_step = 0, exit_step = 0;
  double entry_price = 0, exit_price = 0;
  double return_pct = 0;     // sign-adjusted, before costs
  double duration_days = 0;  // business days
};

inline constexpr int kMaxLevels = 4;

// Open positions of one symbol. Never holds both directions at once.
class PositionBook {
 public:
  explicit PositionBook(Mode mode = Mode::kLongShort, double step_hours = bids::hours::kDay / 3,
                        std::string symbol = "")
      : mode_(mode), step_hours_(step_hours), symbol_(std::move(symbol)) {}

  // Closes every position opposite to each signal, then opens at the signal's
  // level when the mode allows it and the level is at most 4. Curve
  // intersections only close.
  std::vector<Trade> apply(const std::vector<Signal>& signals);
  // Closes everything at the given quote.
  std::vector<Trade> close_all(Timestamp time, long step, double price);

  const std::vector<Position>& open() const { return open_; }
  // Signals above level 4 seen so far (recorded, not traded).
  int skipped_over_level() const { return skipped_; }

 private:
  Trade close(const Position& p, Timestamp time, long step, double price) const;

  Mode mode_;
  double step_hours_;
  std::string symbol_;
  std::vector<Position> open_;
  int skipped_ = 0;
};

}  // namespace mrt::signal
