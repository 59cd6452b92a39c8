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
// Coordinate-ascent search over engine parameters, and weights derived from
// the search results.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrt/backtest/backtest.hpp"

namespace mrt::opt {

struct ContinuousDim {
  std::string name;  // beta, decel_threshold, accel_threshold, kappa, shift
  double lo = 0;
  double hi = 1;
  double init = 0;
};

struct ParamSpace {
  std::vector<ContinuousDim> dims;
  std::vector<std::vector<int>> category_sets;
  std::vector<signal::Trend> trends;
  backtest::BacktestConfig base;  // mode, depth cap, step and cost come from here

  // Five continuous dims, all category subsets of size 2-3, both trends.
  static ParamSpace standard(const backtest::BacktestConfig& base = {});
  // Throws DomainError when bounds are not finite, lo > hi, or init is outside.
  void validate() const;
};

struct Evaluation {
  double score = 0;   // return per position; -inf without positions
  int num = 0;
  double lngth = 0;   // mean duration, days
};

using Objective = std::function<Evaluation(const backtest::BacktestConfig&)>;

struct DurationBand {
  double lo_days = 5;
  double hi_days = 10;
};

struct OptOptions {
  int max_outer = 6;
  std::uint64_t seed = 1;
  int restarts = 0;  // extra random starting points
  double min_education_hours = 126 * 6.5;
  std::optional<DurationBand> duration_band;
};

struct OptResult {
  std::string symbol;
  backtest::BacktestConfig best;
  double education_return = 0;
  int trades = 0;
  double lngth = 0;
  double initial_score = 0;
  bool in_band = true;        // false when no candidate met the duration band
  std::vector<double> trace;  // best score after each outer iteration
  int evaluations = 0;
};

// Objective that runs the backtester on every symbol over the period.
Objective backtest_objective(const std::vector<backtest::QuoteSeries>& quotes, const backtest::Period& period);

// Search with an explicit objective; the education span check is skipped.
OptResult optimize(const ParamSpace& space, const Objective& objective, const OptOptions& options = {});

// Search on quotes. Throws InsufficientData when the period is shorter than
// options.min_education_hours of business time or holds no quotes.
OptResult optimize(const ParamSpace& space, const std::vector<backtest::QuoteSeries>& quotes,
                   const backtest::Period& period, const OptOptions& options = {});

enum class WeightRule { kCutoff, kProportional, kTopK };

struct WeightSpec {
  WeightRule rule = WeightRule::kCutoff;
  double cutoff = 0;  // percent, for kCutoff
  int k = 1;          // for kTopK
};

// Parses "cutoff:20", "proportional", "top-k:5".
WeightSpec parse_weight_spec(const std::string& text);

std::map<std::string, double> weights(const std::vector<OptResult>& results, const WeightSpec& spec);

std::string results_to_json(const std::vector<OptResult>& results);
std::vector<OptResult> results_from_json(const std::string& text);

}  // namespace mrt::opt
