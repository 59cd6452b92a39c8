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
// Quote ingestion, from-scratch replays of the signal engine over a period,
// and the per-level performance report.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrt/core/time.hpp"
#include "mrt/signal/engine.hpp"

namespace mrt::backtest {

struct QuoteSeries {
  std::string symbol;
  std::vector<signal::Quote> samples;  // strictly increasing times, prices > 0
};

// CSV with header timestamp,symbol,price. Rows may come in any order; each
// symbol's samples are sorted by time. Throws ParseError (with line number) on
// malformed rows, non-positive prices and repeated timestamps.
std::vector<QuoteSeries> ingest_csv(std::istream& in);
std::vector<QuoteSeries> ingest_csv_file(const std::string& path);

struct BacktestConfig {
  signal::EngineConfig engine;
  double cost_pct = 0;  // subtracted from every position's return
};

// Flat key=value, '#' comments. Keys: mode, trend, categories, beta,
// decel_threshold, accel_threshold, kappa, shift, depth_cap, step_hours,
// cost_pct. depth_cap takes hours or a duration label such as 1m.
BacktestConfig parse_config(std::istream& in);
BacktestConfig load_config(const std::string& path);
void apply_config_line(BacktestConfig& cfg, const std::string& key, const std::string& value, std::size_t line = 0);
std::string format_config(const BacktestConfig& cfg);

struct Period {
  Timestamp from = 0;
  Timestamp to = 0;  // inclusive
};

struct LevelStats {
  int num = 0;
  double ret = 0;      // mean return per position, percent
  double ret_std = 0;  // population standard deviation
  double lngth = 0;    // mean duration, business days
};

struct Metrics {
  LevelStats all;
  std::map<int, LevelStats> levels;
};

Metrics compute_metrics(const std::vector<signal::Trade>& trades);

struct BacktestResult {
  std::vector<signal::Trade> trades;
  Metrics metrics;
};

// Replays the engine from scratch at period.from. Up to depth_cap of quotes
// before the period only fill the price history. Everything still open at the
// last quote of the period is closed there.
BacktestResult run(const BacktestConfig& config, const QuoteSeries& quotes, const Period& period);
BacktestResult run(const BacktestConfig& config, const std::vector<QuoteSeries>& quotes, const Period& period);

struct PeriodStats {
  int num = 0;
  double ret = 0;
  double lngth = 0;
};

// 88 * sum(RET_i NUM_i) / sum(LNGTH_i NUM_i); 88 business days in 4 months.
double avrg_return(const std::vector<PeriodStats>& periods);

struct PeriodReport {
  Period period;
  Metrics metrics;
  std::string benchmark;                  // e.g. "SPY"
  std::optional<double> benchmark_change; // percent over the period
};

// Percent change of a series between the first and last quote of the period.
std::optional<double> period_change(const QuoteSeries& series, const Period& period);

// Two decimals at most, trailing zeros dropped ("1.1", "0.72", "0").
std::string format_number(double v);

// One period block: optional PERIOD header, the ALL line, then one line per level.
std::string render_period(const PeriodReport& report);
// Summary header followed by every period block.
std::string render_report(const std::string& title, const std::vector<PeriodReport>& periods);
// period_from,period_to,scope,num,ret,ret_std,lngth
std::string render_report_csv(const std::vector<PeriodReport>& periods);

}  // namespace mrt::backtest
