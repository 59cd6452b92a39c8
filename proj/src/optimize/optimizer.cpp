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
#include "mrt/optimize/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <random>

#include "mrt/core/error.hpp"

namespace mrt::opt {
namespace {

constexpr double kNoPositions = -std::numeric_limits<double>::infinity();
constexpr double kProbe = 0.01;     // finite-difference spacing, fraction of range
constexpr double kFirstStep = 0.1;  // initial step, fraction of range
constexpr double kMinStep = 1e-3;   // a dim stops below this fraction of range
constexpr int kMaxMovesPerDim = 60;

double& field(backtest::BacktestConfig& cfg, const std::string& name) {
  auto& e = cfg.engine;
  if (name == "beta") return e.beta;
  if (name == "decel_threshold") return e.decel_threshold;
  if (name == "accel_threshold") return e.accel_threshold;
  if (name == "kappa") return e.kappa;
  if (name == "shift") return e.shift;
  throw DomainError("unknown parameter " + name);
}

// Out-of-band candidates rank below every in-band one, ordered by how far
// their mean duration misses the band, so the search can walk back into it.
constexpr double kOutOfBand = -1e12;

struct Scored {
  Evaluation eval;
  double rank = 0;
};

struct Point {
  backtest::BacktestConfig cfg;
  Scored eval;
};

class Search {
 public:
  Search(const ParamSpace& space, const Objective& objective, const OptOptions& options)
      : space_(space), objective_(objective), options_(options) {}

  Scored evaluate(const backtest::BacktestConfig& cfg) {
    ++evaluations_;
    Scored s{objective_(cfg), 0};
    if (s.eval.num == 0) s.eval.score = kNoPositions;
    s.rank = s.eval.score;
    if (options_.duration_band && s.eval.num > 0) {
      const auto& band = *options_.duration_band;
      const double miss = std::max({band.lo_days - s.eval.lngth, s.eval.lngth - band.hi_days, 0.0});
      if (miss > 0) s.rank = kOutOfBand - miss;
    }
    return s;
  }

  static bool better(const Scored& a, const Scored& b) { return a.rank > b.rank; }

  void sweep_discrete(Point& p) {
    for (const auto& cats : space_.category_sets) {
      for (auto trend : space_.trends) {
        if (cats == p.cfg.engine.categories && trend == p.cfg.engine.trend) continue;
        auto cfg = p.cfg;
        cfg.engine.categories = cats;
        cfg.engine.trend = trend;
        const auto e = evaluate(cfg);
        if (better(e, p.eval)) p = {cfg, e};
      }
    }
  }

  void ascend_dim(Point& p, const ContinuousDim& dim) {
    const double range = dim.hi - dim.lo;
    if (range <= 0) return;
    double step = kFirstStep * range;
    for (int moves = 0; moves < kMaxMovesPerDim && step >= kMinStep * range; ++moves) {
      double& x = field(p.cfg, dim.name);
      const double x0 = x;
      const double h = kProbe * range;
      auto probe = [&](double v) {
        auto cfg = p.cfg;
        field(cfg, dim.name) = std::clamp(v, dim.lo, dim.hi);
        return evaluate(cfg);
      };
      const double up = probe(x0 + h).rank;
      const double down = probe(x0 - h).rank;
      std::vector<double> directions;
      if (std::isfinite(up) || std::isfinite(down)) {
        const double grad = (std::isfinite(up) ? up : p.eval.rank) - (std::isfinite(down) ? down : p.eval.rank);
        if (grad > 0) directions = {1.0};
        else if (grad < 0) directions = {-1.0};
      }
      if (directions.empty()) directions = {1.0, -1.0};  // flat: try both ways
      bool moved = false;
      for (double dir : directions) {
        const double target = std::clamp(x0 + dir * step, dim.lo, dim.hi);
        if (target == x0) continue;
        auto cfg = p.cfg;
        field(cfg, dim.name) = target;
        const auto e = evaluate(cfg);
        if (better(e, p.eval)) {
          p = {cfg, e};
          moved = true;
          break;
        }
      }
      if (!moved) step /= 2;
    }
  }

  Point run_from(Point p, std::vector<double>& trace) {
    for (int outer = 0; outer < options_.max_outer; ++outer) {
      const double before = p.eval.rank;
      sweep_discrete(p);
      for (const auto& dim : space_.dims) ascend_dim(p, dim);
      trace.push_back(p.eval.eval.score);
      if (!(p.eval.rank > before)) break;
    }
    return p;
  }

  int evaluations() const { return evaluations_; }

 private:
  const ParamSpace& space_;
  const Objective& objective_;
  const OptOptions& options_;
  int evaluations_ = 0;
};

std::vector<std::vector<int>> subsets(int n, int min_size, int max_size) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    const int size = __builtin_popcount(static_cast<unsigned>(mask));
    if (size < min_size || size > max_size) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) s.push_back(i + 1);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ParamSpace ParamSpace::standard(const backtest::BacktestConfig& base) {
  ParamSpace s;
  s.base = base;
  const auto& e = base.engine;
  s.dims = {{"beta", 1.0, 8.0, std::clamp(e.beta, 1.0, 8.0)},
            {"decel_threshold", 0.0, 2.0, std::clamp(e.decel_threshold, 0.0, 2.0)},
            {"accel_threshold", 0.0, 2.0, std::clamp(e.accel_threshold, 0.0, 2.0)},
            {"kappa", 0.05, 1.0, std::clamp(e.kappa, 0.05, 1.0)},
            {"shift", 0.0, 5.0, std::clamp(e.shift, 0.0, 5.0)}};
  s.category_sets = subsets(bids::kNumCategories, 2, 3);
  s.trends = {signal::Trend::kPro, signal::Trend::kCounter};
  return s;
}

void ParamSpace::validate() const {
  for (const auto& d : dims) {
    backtest::BacktestConfig probe;
    field(probe, d.name);  // throws on an unknown name
    if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || d.lo > d.hi) {
      throw DomainError("bad bounds for " + d.name);
    }
    if (d.init < d.lo || d.init > d.hi) throw DomainError("initial " + d.name + " outside its bounds");
  }
  for (const auto& c : category_sets) {
    if (c.empty()) throw DomainError("empty category set");
  }
}

Objective backtest_objective(const std::vector<backtest::QuoteSeries>& quotes, const backtest::Period& period) {
  return [&quotes, period](const backtest::BacktestConfig& cfg) {
    const auto r = backtest::run(cfg, quotes, period);
    Evaluation e;
    e.num = r.metrics.all.num;
    e.score = e.num > 0 ? r.metrics.all.ret : kNoPositions;
    e.lngth = r.metrics.all.lngth;
    return e;
  };
}

OptResult optimize(const ParamSpace& space, const Objective& objective, const OptOptions& options) {
  space.validate();
  Search search(space, objective, options);

  backtest::BacktestConfig start = space.base;
  for (const auto& d : space.dims) field(start, d.name) = d.init;
  start.engine.validate();

  OptResult result;
  Point best{start, search.evaluate(start)};
  result.initial_score = best.eval.eval.score;
  best = search.run_from(best, result.trace);

  std::mt19937_64 rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    auto cfg = space.base;
    for (const auto& d : space.dims) field(cfg, d.name) = std::uniform_real_distribution<double>(d.lo, d.hi)(rng);
    if (!space.category_sets.empty()) {
      cfg.engine.categories = space.category_sets[rng() % space.category_sets.size()];
    }
    std::vector<double> trace;
    Point p = search.run_from({cfg, search.evaluate(cfg)}, trace);
    if (Search::better(p.eval, best.eval)) best = p;
    result.trace.push_back(best.eval.eval.score);
  }

  result.best = best.cfg;
  result.education_return = best.eval.eval.score;
  result.trades = best.eval.eval.num;
  result.lngth = best.eval.eval.lngth;
  result.in_band = best.eval.rank > kOutOfBand;
  result.evaluations = search.evaluations();
  return result;
}

OptResult optimize(const ParamSpace& space, const std::vector<backtest::QuoteSeries>& quotes,
                   const backtest::Period& period, const OptOptions& options) {
  std::size_t longest = 0;
  for (const auto& q : quotes) {
    const auto n = static_cast<std::size_t>(std::count_if(q.samples.begin(), q.samples.end(), [&](const auto& s) {
      return s.time >= period.from && s.time <= period.to;
    }));
    longest = std::max(longest, n);
  }
  if (longest == 0) throw InsufficientData("no quotes in the education period");
  const double span = static_cast<double>(longest - 1) * space.base.engine.step_hours;
  if (span + 1e-9 < options.min_education_hours) {
    throw InsufficientData("education period covers " + std::to_string(span) + "h of quotes, need " +
                           std::to_string(options.min_education_hours) + "h");
  }
  auto result = optimize(space, backtest_objective(quotes, period), options);
  if (quotes.size() == 1) result.symbol = quotes.front().symbol;
  return result;
}

WeightSpec parse_weight_spec(const std::string& text) {
  WeightSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "cutoff") {
      spec.rule = WeightRule::kCutoff;
      spec.cutoff = arg.empty() ? 0.0 : std::stod(arg);
    } else if (head == "proportional") {
      spec.rule = WeightRule::kProportional;
    } else if (head == "top-k") {
      spec.rule = WeightRule::kTopK;
      spec.k = arg.empty() ? 1 : std::stoi(arg);
      if (spec.k < 0) throw DomainError("k must be >= 0");
    } else {
      throw DomainError("unknown weight rule: " + text);
    }
  } catch (const std::logic_error&) {
    throw DomainError("bad weight rule: " + text);
  }
  return spec;
}

std::map<std::string, double> weights(const std::vector<OptResult>& results, const WeightSpec& spec) {
  if (results.empty()) throw DomainError("weights need at least one result");
  std::map<std::string, double> out;
  switch (spec.rule) {
    case WeightRule::kCutoff:
      for (const auto& r : results) out[r.symbol] = r.education_return > spec.cutoff ? 1.0 : 0.0;
      break;
    case WeightRule::kProportional: {
      double total = 0;
      for (const auto& r : results) total += std::max(r.education_return, 0.0);
      for (const auto& r : results) out[r.symbol] = total > 0 ? std::max(r.education_return, 0.0) / total : 0.0;
      break;
    }
    case WeightRule::kTopK: {
      std::vector<const OptResult*> order;
      for (const auto& r : results) order.push_back(&r);
      std::stable_sort(order.begin(), order.end(),
                       [](const OptResult* a, const OptResult* b) { return a->education_return > b->education_return; });
      for (std::size_t i = 0; i < order.size(); ++i) {
        out[order[i]->symbol] = static_cast<int>(i) < spec.k ? 1.0 : 0.0;
      }
      break;
    }
  }
  return out;
}

std::string results_to_json(const std::vector<OptResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j;
    j["symbol"] = r.symbol;
    j["education_return"] = std::isfinite(r.education_return) ? nlohmann::json(r.education_return) : nlohmann::json();
    j["trades"] = r.trades;
    j["lngth"] = r.lngth;
    j["evaluations"] = r.evaluations;
    j["config"] = backtest::format_config(r.best);
    arr.push_back(j);
  }
  return arr.dump(2);
}

std::vector<OptResult> results_from_json(const std::string& text) {
  std::vector<OptResult> out;
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad results json: ") + e.what(), 0);
  }
  if (!arr.is_array()) throw ParseError("results json must be an array", 0);
  for (const auto& j : arr) {
    OptResult r;
    r.symbol = j.value("symbol", "");
    r.education_return = j.contains("education_return") && j["education_return"].is_number()
                             ? j["education_return"].get<double>()
                             : kNoPositions;
    r.trades = j.value("trades", 0);
    r.lngth = j.value("lngth", 0.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mrt::opt
