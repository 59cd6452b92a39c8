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
// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Oracles here are independent of the code under test where one exists
// (printed tables, derangement counts, brute-force enumeration).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mrt/backtest/backtest.hpp"
#include "mrt/bids/tables.hpp"
#include "mrt/bids/two_bid.hpp"
#include "mrt/impact/chart.hpp"
#include "mrt/impact/impact_math.hpp"
#include "mrt/impact/special_functions.hpp"
#include "mrt/optimize/optimizer.hpp"
#include "mrt/pont/bot.hpp"
#include "mrt/pont/match.hpp"
#include "mrt/pont/misere.hpp"
#include "mrt/signal/engine.hpp"

using namespace mrt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream o;
  o << std::setprecision(prec) << v;
  return o.str();
}

// ---- tables -----------------------------------------------------------------

constexpr double kDash = std::numeric_limits<double>::quiet_NaN();

// As printed, row by row.
const std::vector<std::vector<double>> kSuper = {
    {1, 1.5, 3, 6.5, 11, 15},   {2, 3, 6, 13, 22, 30},      {3, 4.5, 9, 19.5, 33, 45},
    {4, 6, 12, 26, 44, 60},     {5, 7.5, 15, 32.5, 55, 75}, {6, 9, 18, 39, 66, 90}};
const std::vector<std::vector<double>> kUltra = {
    {2, 3, 5, 8, 13, 20},     {4, 6, 10, 16, 26, 40},   {6, 9, 15, 24, 39, 60},
    {8, 12, 20, 32, 52, 80},  {10, 15, 25, 40, 65, 100}, {12, 18, 30, 48, 78, 120}};
const std::vector<std::vector<double>> kExtra = {{3.5, 5.5, 8.5, 15.5, 28},
                                                 {7, 11, 17, 31, 56},
                                                 {10.5, 16.5, 25.5, 46.5, 84},
                                                 {14, 22, 34, 62, 112},
                                                 {17.5, 27.5, 42.5, 77.5, 140}};
const std::vector<std::vector<double>> kRegular = {
    {7, 10.5, 17.5, 44.5}, {14, 21, 35, 89}, {21, 31.5, 52.5, 133.5}, {28, 42, 70, 178}};
// Columns 1h 2h 3h 1d 2d 4d 1w 2w 1m 2m 3m 4m.
const std::vector<std::vector<double>> kMin7 = {
    {1, 1.49, 2.27, 3, 4.31, 5.92, 6.49, 8.44, 10.99, 13.57, 15.01, 16.16},
    {kDash, 1.28, 1.87, 2.5, 3.65, 5.16, 5.74, 7.62, 10.29, 13.28, 15.1, 16.57},
    {kDash, kDash, kDash, 2, 3, 4.4, 5, 6.8, 9.6, 13, 15.2, 17},
    {kDash, kDash, kDash, kDash, 2.54, 3.71, 4.25, 6.15, 9.05, 12.85, 15.35, 17.5},
    {kDash, kDash, kDash, kDash, kDash, kDash, 3.5, 5.5, 8.5, 12.7, 15.5, 18},
    {kDash, kDash, kDash, kDash, kDash, kDash, kDash, 4.97, 7.75, 11.6, 14.75, 17.75},
    {kDash, kDash, kDash, kDash, kDash, kDash, kDash, kDash, 7, 10.5, 14, 17.5}};

// Counts matching cells; a mismatch in presence counts as a failure.
int compare_table(bids::TableKind kind, const std::vector<std::vector<double>>& printed, double tol,
                  std::vector<std::string>& bad, double* worst) {
  const auto t = bids::render_table(kind);
  int ok = 0;
  if (t.cells.size() != printed.size()) {
    bad.push_back(std::string(bids::table_kind_name(kind)) + ": row count");
    return 0;
  }
  for (std::size_t r = 0; r < printed.size(); ++r) {
    if (t.cells[r].size() != printed[r].size()) {
      bad.push_back(std::string(bids::table_kind_name(kind)) + ": column count");
      continue;
    }
    for (std::size_t c = 0; c < printed[r].size(); ++c) {
      const auto& cell = t.cells[r][c];
      bool want_cell = !std::isnan(printed[r][c]);
      if (cell.has_value() != want_cell) {
        bad.push_back(std::string(bids::table_kind_name(kind)) + " " + t.row_labels[r] + "/" + t.column_labels[c] +
                      ": presence");
        continue;
      }
      if (!want_cell) continue;
      double err = std::abs(*cell - printed[r][c]);
      *worst = std::max(*worst, err);
      if (err <= tol + 1e-12) ++ok;
      else
        bad.push_back(std::string(bids::table_kind_name(kind)) + " " + t.row_labels[r] + "/" + t.column_labels[c] +
                      ": " + fmt(*cell) + " vs " + fmt(printed[r][c]));
    }
  }
  return ok;
}

Outcome tables() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  std::vector<std::string> bad;
  double worst_cat = 0, worst7 = 0;
  int s = compare_table(bids::TableKind::kSuper, kSuper, 0.05, bad, &worst_cat);
  int u = compare_table(bids::TableKind::kUltra, kUltra, 0.05, bad, &worst_cat);
  int e = compare_table(bids::TableKind::kExtra, kExtra, 0.05, bad, &worst_cat);
  int r = compare_table(bids::TableKind::kRegular, kRegular, 0.05, bad, &worst_cat);
  int m = compare_table(bids::TableKind::kMin7Cat, kMin7, 0.02, bad, &worst7);
  const auto min7 = bids::render_table(bids::TableKind::kMin7Cat);
  bool col3h = min7.column_labels[2] == "3h" && min7.column_hours[2] == 4.0;
  double reg12 = bids::g(252 * 6.5, 7);
  bool reg_ok = std::abs(reg12 - 44.45) <= 0.05;
  for (auto k : {bids::TableKind::kSuper, bids::TableKind::kUltra, bids::TableKind::kExtra, bids::TableKind::kRegular,
                 bids::TableKind::kMin4Cat, bids::TableKind::kMin7Cat})
    (void)bids::to_text(bids::render_table(k));
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = bad.empty() && col3h && reg_ok && sec < 1.0 && s == 36 && u == 36 && e == 25 && r == 16 && m == 55;
  o.detail = "super " + std::to_string(s) + "/36, ultra " + std::to_string(u) + "/36, extra " + std::to_string(e) +
             "/25, regular " + std::to_string(r) + "/16 (max err " + fmt(worst_cat, 2) + "), 7-category " +
             std::to_string(m) + "/55 (max err " + fmt(worst7, 2) + "), 3h column at " + fmt(min7.column_hours[2]) +
             "h, g(12m,7) = " + fmt(reg12, 6) + ", " + fmt(sec * 1000, 3) + " ms";
  for (auto& b : bad) o.info.push_back(b);
  return o;
}

// ---- AVRG RETURN ------------------------------------------------------------

Outcome avrg() {
  // (NUM, RET, LNGTH) per period as printed for SPY.
  const std::vector<backtest::PeriodStats> longs = {
      {18, 0.72, 3.0}, {13, 0.45, 5.2}, {23, 0.56, 2.2}, {12, 0.59, 2.2}, {17, 0.10, 2.4}};
  const std::vector<backtest::PeriodStats> shorts = {
      {33, 0.02, 3.7}, {46, 0.5, 2.7}, {66, 0.04, 2.9}, {42, 0.05, 4.4}, {68, 0.0, 2.5}};
  double l = backtest::avrg_return(longs), s = backtest::avrg_return(shorts);
  Outcome o;
  o.pass = std::abs(l - 14.9) <= 0.05 && std::abs(s - 3.15) <= 0.05;
  o.detail = "long-only " + fmt(l) + " (14.9), short-only " + fmt(s) + " (3.15)";
  return o;
}

// ---- special functions --------------------------------------------------------

struct Derivs {
  double f, d1, d2;
};

Derivs diff(const std::function<double(double)>& f, double t, double h) {
  const double fm2 = f(t - 2 * h), fm1 = f(t - h), f0 = f(t), fp1 = f(t + h), fp2 = f(t + 2 * h);
  return {f0, (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h), (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)};
}

// |sum of terms| / sum of |terms|
double relative(std::initializer_list<double> terms) {
  double sum = 0, mag = 0;
  for (double x : terms) {
    sum += x;
    mag += std::abs(x);
  }
  return mag == 0 ? 0 : std::abs(sum) / mag;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

Outcome special_functions() {
  using namespace mrt::impact;
  auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, double> worst;

  // Euler-type price equation t^2 p'' + (1 - c + b) t p' + a p = 0, all three root kinds.
  for (auto [a, b, c] : {std::array<double, 3>{0.05, 0.2, 0.9}, {0.04, 0.2, 0.6}, {1.0, 0.0, 1.0}, {0.0, 0.2, 0.6}}) {
    const auto roots = char_roots(a, b, c);
    auto p = [&](double t) { return price_path(roots, 1.3, -0.4, t); };
    for (double t : linspace(0.5, 50.0, 60)) {
      const auto d = diff(p, t, 1e-3 * t);
      worst["price"] = std::max(worst["price"], relative({t * t * d.d2, (1 - c + b) * t * d.d1, a * d.f}));
    }
  }
  // Saturated system with a = 0.
  {
    const double c = 0.9, b = 0.35, sigma = 1.7, beta = 0.15, big_b = 0.8;
    auto u = [&](double t) { return logistic_solution(c, b, beta, big_b, sigma, t).u; };
    auto p = [&](double t) { return logistic_solution(c, b, beta, big_b, sigma, t).p; };
    for (double t : linspace(0.1, 100.0, 80)) {
      const auto du = diff(u, t, 1e-3 * t);
      const auto dp = diff(p, t, 1e-3 * t);
      const double rhs_u = (1 - du.f) * (c / t * du.f - dp.f / (sigma * t));
      worst["logistic"] = std::max({worst["logistic"], relative({du.d1, -rhs_u}), relative({dp.d1 / sigma, -b * du.d1})});
    }
  }
  // Profit taking t^2 p'' - c t p' + e t^2 p = 0.
  for (double c : {0.3, 0.6, 1.0})
    for (double e : {0.5, 1.0, 2.0}) {
      auto p = [&](double t) { return profit_path(c, e, 1.0, 0.6, t); };
      for (double t : linspace(1.0, 60.0, 60)) {
        const auto d = diff(p, t, 1e-2);
        worst["profit"] = std::max(worst["profit"], relative({t * t * d.d2, -c * t * d.d1, e * t * t * d.f}));
      }
    }
  // Modified profit taking t^2 p'' + (1 - c) t p' + e t^nu p = 0, both solutions.
  for (double nu : {0.5, 0.8, 1.0})
    for (double c : {0.3, 0.7}) {
      const double e = 1.2;
      auto p1 = [&](double t) { return modified_profit_path(c, e, nu, t).first; };
      auto p2 = [&](double t) { return *modified_profit_path(c, e, nu, t).second; };
      for (double t : linspace(1.0, 60.0, 40))
        for (const auto& p : {std::function<double(double)>(p1), std::function<double(double)>(p2)}) {
          const auto d = diff(p, t, 1e-2);
          worst["modified"] = std::max(worst["modified"], relative({t * t * d.d2, (1 - c) * t * d.d1, e * std::pow(t, nu) * d.f}));
        }
    }
  // Two events: t (t + tau) p'' + ((1 - c) t + (1 - c0) tau) p' + a p = 0.
  {
    const double a = 0.06, c0 = 0.4, c_tau = 0.3, tau = 5.0, c = c0 + c_tau;
    auto p = [&](double t) { return two_event_price(a, c0, c_tau, tau, t).p; };
    for (double t : linspace(0.05 * tau, 0.9 * tau, 40)) {
      const auto d = diff(p, t, 1e-3 * tau);
      worst["two-event"] =
          std::max(worst["two-event"], relative({t * (t + tau) * d.d2, ((1 - c) * t + (1 - c0) * tau) * d.d1, a * d.f}));
    }
    const double tau2 = 2.0;
    auto q1 = [&](double t) { return *two_event_price(a, c0, c_tau, tau2, t).p1; };
    auto q2 = [&](double t) { return *two_event_price(a, c0, c_tau, tau2, t).p2; };
    for (double t : linspace(2.5 * tau2, 50 * tau2, 30))
      for (const auto& q : {std::function<double(double)>(q1), std::function<double(double)>(q2)}) {
        const auto d = diff(q, t, 1e-3 * t);
        worst["two-event"] = std::max(
            worst["two-event"], relative({t * (t + tau2) * d.d2, ((1 - c) * t + (1 - c0) * tau2) * d.d1, a * d.f}));
      }
  }
  double max_res = 0;
  for (auto& [k, v] : worst) max_res = std::max(max_res, v);

  // Series against asymptotic at the crossover, relative to the envelope.
  double cross = 0;
  for (double alpha = 0.0; alpha <= 3.0 + 1e-12; alpha += 0.05) {
    const double x = bessel_crossover(alpha);
    const double env = std::sqrt(2.0 / (std::numbers::pi * x));
    cross = std::max(cross, std::abs(bessel_j_series(alpha, x) - bessel_j_asymptotic(alpha, x)) / env);
  }
  const double half = std::abs(bessel_j(0.5, std::numbers::pi / 2) - 2 / std::numbers::pi);

  // Peak spacing of the profit path for t sqrt(e) > 40.
  double spacing_err = 0;
  int spacings = 0;
  for (double e : {0.8, 1.7}) {
    const double c = 0.5, w = std::sqrt(e), h = 1e-3, want = 2 * std::numbers::pi / w;
    std::vector<double> peaks;
    double prev2 = profit_basis(c, e, 40 / w - 2 * h).first, prev = profit_basis(c, e, 40 / w - h).first;
    for (double t = 40 / w; t < 120 / w; t += h) {
      const double cur = profit_basis(c, e, t).first;
      if (prev > prev2 && prev >= cur) peaks.push_back(t - h);
      prev2 = prev;
      prev = cur;
    }
    for (std::size_t i = 1; i < peaks.size(); ++i) {
      spacing_err = std::max(spacing_err, std::abs(peaks[i] - peaks[i - 1] - want) / want);
      ++spacings;
    }
  }
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  o.pass = max_res < 1e-6 && cross < 0.01 && half < 1e-10 && spacings >= 8 && spacing_err < 0.02 && sec < 10;
  o.detail = "max ODE residual " + fmt(max_res, 2) + ", crossover gap " + fmt(100 * cross, 2) + "% of envelope, |J_1/2(pi/2) - 2/pi| " +
             fmt(half, 2) + ", peak spacing err " + fmt(100 * spacing_err, 2) + "% over " + std::to_string(spacings) +
             " gaps, " + fmt(sec, 3) + " s";
  for (auto& [k, v] : worst) o.info.push_back("residual " + k + " " + fmt(v, 2));
  return o;
}

// ---- tree growth ----------------------------------------------------------------

Outcome tree_growth() {
  // D_n by the recurrence D_n = (n - 1)(D_{n-1} + D_{n-2}), exact in integers.
  std::vector<long double> d = {1, 0};
  for (int n = 2; n <= 20; ++n) d.push_back((n - 1) * (d[n - 1] + d[n - 2]));
  long double fact = 1;  // (n - 1)!
  const auto f0 = impact::tree_growth(1.0, 0.0, 1.0, 2.0, 12);
  const auto f1 = impact::tree_growth(1.0, 0.0, 0.0, 1.0, 20);
  double err0 = 0, err1 = 0;
  for (int n = 1; n <= 12; ++n) {
    if (n > 1) fact *= (n - 1);
    err0 = std::max(err0, std::abs(f0[n - 1] - n));
    err1 = std::max(err1, static_cast<double>(std::abs(f1[n - 1] - d[n] / fact)));
  }
  double ratio = f1[19] / 20 * std::numbers::e;
  Outcome o;
  o.pass = err0 == 0 && err1 < 1e-12 && std::abs(ratio - 1) < 0.015;
  o.detail = "f0_n = n exact (max err " + fmt(err0) + "), f1_n vs D_n/(n-1)! max err " + fmt(err1, 2) +
             " for n <= 12, f1_20/20 = " + fmt(f1[19] / 20, 6) + " (" + fmt(100 * std::abs(ratio - 1), 2) + "% from 1/e)";
  return o;
}

// ---- exponent recovery -------------------------------------------------------------

impact::ChartSeries synthetic(double r, double step, bool modulated) {
  impact::ChartSeries c;
  c.times = impact::uniform_grid(1.0, 150.0, step);
  c.values.resize(c.times.size());
  for (Eigen::Index i = 0; i < c.times.size(); ++i) {
    const double t = c.times(i);
    c.values(i) = std::pow(t, r) * (modulated ? std::sin(2 * std::numbers::pi * std::log(t)) : 1.0);
  }
  return c;
}

Outcome exponent_recovery() {
  Outcome o;
  double pure = 0, mod = 0;
  for (double r : {0.137, 0.3, 0.418}) {
    for (double step : {1.0, 0.25, 0.1}) pure = std::max(pure, std::abs(impact::estimate_exponent(synthetic(r, step, false)) - r));
    for (double step : {0.25, 0.1}) mod = std::max(mod, std::abs(impact::estimate_exponent(synthetic(r, step, true)) - r));
  }
  o.pass = pure <= 0.01 && mod <= 0.05;
  o.detail = "pure power laws max err " + fmt(pure, 2) + ", log-periodic max err " + fmt(mod, 2) +
             " (r in 0.137, 0.3, 0.418; 0.1h and 0.25h grids)";
  for (auto [name, comp] : {std::pair{"g1 term", impact::ChartComponent::kSuper}, {"g3 term", impact::ChartComponent::kUltra}})
    o.info.push_back(std::string("model chart ") + name + ": envelope slope " +
                     fmt(impact::estimate_exponent(impact::fake_chart(impact::uniform_grid(1, 150, 0.1), comp))) +
                     " on [1h,150h] (built-in exponent " + (comp == impact::ChartComponent::kSuper ? "0.137" : "0.418") + ")");
  return o;
}

// ---- fake-chart trading -----------------------------------------------------------

Outcome fake_chart_trading() {
  auto t0 = std::chrono::steady_clock::now();
  const auto chart = impact::fake_chart(impact::uniform_grid(1, 150, 1));
  backtest::QuoteSeries q;
  q.symbol = "FAKE";
  for (Eigen::Index i = 0; i < chart.size(); ++i)
    q.samples.push_back({static_cast<Timestamp>(i) * 3600, 100 * (1 + chart.values(i) / 100)});
  backtest::BacktestConfig base;
  base.engine.step_hours = 1;
  const backtest::Period p{q.samples.front().time, q.samples.back().time};
  const auto def = backtest::run(base, q, p);
  opt::OptOptions oo;
  oo.min_education_hours = 149;  // the whole 150-sample series is the education period
  const auto r = opt::optimize(opt::ParamSpace::standard(base), {q}, p, oo);
  const auto check = backtest::run(r.best, q, p);
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  double got = check.metrics.all.ret;
  double d = def.metrics.all.num ? def.metrics.all.ret : 0;
  o.pass = check.metrics.all.num > 0 && got > 0 && got > d && sec < 120;
  o.detail = "optimized return per position " + fmt(got) + "% over " + std::to_string(check.metrics.all.num) +
             " positions vs default " + fmt(d) + "% over " + std::to_string(def.metrics.all.num) + ", " +
             std::to_string(r.evaluations) + " evaluations, " + fmt(sec, 3) + " s";
  return o;
}

// ---- engine invariants ----------------------------------------------------------

Outcome engine_invariants() {
  using namespace mrt::signal;
  int flips = 0, closes = 0, gaps = 0, det = 0, signals = 0;
  for (unsigned seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, 0.8);
    std::vector<Quote> q;
    double price = 100;
    for (int i = 0; i < 600; ++i) {
      q.push_back({static_cast<Timestamp>(i) * 7800, price});
      price *= 1 + step(rng) / 100;
    }
    EngineConfig pro;
    pro.beta = 1 + (seed % 4);
    pro.categories = seed % 2 ? std::vector<int>{1, 3} : std::vector<int>{1, 2, 5};
    EngineConfig counter = pro;
    counter.trend = Trend::kCounter;
    const auto a = run_engine(pro, q);
    const auto b = run_engine(counter, q);
    signals += static_cast<int>(a.size());
    bool flip = a.size() == b.size();
    for (std::size_t i = 0; flip && i < a.size(); ++i)
      flip = a[i].direction == opposite(b[i].direction) && a[i].level == b[i].level && a[i].step == b[i].step &&
             a[i].kind == b[i].kind;
    flips += !flip;

    int buy = 0, sell = 0;
    bool gapless = true;
    for (const auto& s : a) {
      int& mine = s.direction == Direction::kBuy ? buy : sell;
      int& other = s.direction == Direction::kBuy ? sell : buy;
      gapless = gapless && s.level == ++mine;
      other = 0;
    }
    gaps += !gapless;

    // Every signal closes all positions of the other direction.
    PositionBook book(Mode::kLongShort, pro.step_hours, "RW");
    bool closed = true;
    for (const auto& s : a) {
      std::size_t opp = std::count_if(book.open().begin(), book.open().end(),
                                      [&](const Position& p) { return p.direction != s.direction; });
      auto trades = book.apply({s});
      std::size_t closed_opp = std::count_if(trades.begin(), trades.end(),
                                             [&](const Trade& t) { return t.direction != s.direction; });
      bool none_left = std::none_of(book.open().begin(), book.open().end(),
                                    [&](const Position& p) { return p.direction != s.direction; });
      closed = closed && closed_opp == opp && none_left;
    }
    closes += !closed;

    std::ostringstream x, y;
    write_signals_csv(x, "RW", a);
    write_signals_csv(y, "RW", run_engine(pro, q));
    backtest::BacktestConfig bc;
    bc.engine = pro;
    backtest::QuoteSeries qs{"RW", q};
    backtest::Period per{q.front().time, q.back().time};
    auto r1 = backtest::run(bc, qs, per), r2 = backtest::run(bc, qs, per);
    std::string rep1 = backtest::render_report_csv({{per, r1.metrics, "", std::nullopt}});
    std::string rep2 = backtest::render_report_csv({{per, r2.metrics, "", std::nullopt}});
    det += !(x.str() == y.str() && rep1 == rep2 && r1.trades.size() == r2.trades.size());
  }
  Outcome o;
  o.pass = flips == 0 && closes == 0 && gaps == 0 && det == 0 && signals > 0;
  o.detail = "50 random walks, " + std::to_string(signals) + " signals: flip-symmetry failures " + std::to_string(flips) +
             ", close-all failures " + std::to_string(closes) + ", level gaps " + std::to_string(gaps) +
             ", nondeterministic runs " + std::to_string(det);
  return o;
}

// ---- pont rules ---------------------------------------------------------------------

Outcome pont_rules() {
  using namespace mrt::pont;
  // Bidding table for 3-4 players: required tricks at 6, 7, 8, 9 cards.
  // The two cells printed as dots (5/6 and m at 6 cards) take 5, as in the
  // basic table, and 6, the misere row's change list.
  struct Row {
    const char* bid;
    std::array<int, 4> tricks;
  };
  const std::vector<Row> table = {
      {"3/6", {3, 4, 4, 5}}, {"4/7", {4, 4, 5, 6}}, {"5/8", {4, 5, 5, 6}}, {"4/6", {4, 5, 6, 6}},
      {"5/7", {5, 5, 6, 7}}, {"6/8", {5, 6, 6, 7}}, {"m", {6, 6, 7, 8}},   {"5/6", {5, 6, 7, 8}},
      {"6/7", {6, 6, 7, 8}}, {"7/8", {6, 7, 7, 8}}, {"6/6", {6, 7, 8, 9}}};
  int cells = 0, cell_ok = 0;
  for (const auto& row : table)
    for (int k = 0; k < 4; ++k) {
      ++cells;
      cell_ok += min_tricks(parse_bid(row.bid), 6 + k) == row.tricks[k];
    }

  // Seeded self-play across every variant and table size.
  std::vector<GameConfig> cfgs;
  for (auto v : {Variant::kFull, Variant::kBasic, Variant::kPoker})
    for (int p = 2; p <= 4; ++p)
      for (bool teams : {false, true}) {
        if (teams && (p != 4 || v == Variant::kPoker)) continue;
        GameConfig c;
        c.variant = v;
        c.players = p;
        c.partnerships = teams;
        c.bot_samples = 32;
        cfgs.push_back(c);
      }
  const int kGames = 10000, kPerMatch = 5;
  int games = 0, illegal = 0, lost_cards = 0, nonzero = 0, stuck = 0, moves = 0;
  int example_seen = 0, example_bad = 0;
  std::map<std::string, int> kinds;
  std::vector<std::string> nonzero_examples;
  for (int mi = 0; games < kGames; ++mi) {
    GameConfig c = cfgs[mi % cfgs.size()];
    c.seed = 7000 + static_cast<std::uint64_t>(mi);
    c.strict_scoring = (mi / cfgs.size()) % 2 == 1;
    Match m(c);
    for (int g = 0; g < kPerMatch && games < kGames; ++g, ++games) {
      if (g) m.next_game();
      int steps = 0;
      while (!m.game().over()) {
        Action a = bot_action(m.game(), m.bot_seed());
        auto legal = m.game().legal_actions();
        if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
          ++illegal;
          break;
        }
        m.apply(a);
        ++moves;
        if (!m.game().cards_conserved()) {
          ++lost_cards;
          break;
        }
        if (++steps > 5000) {
          ++stuck;
          break;
        }
      }
      if (!m.game().over()) break;
      const auto& r = *m.game().result();
      double sum_r = 0, sum_d = r.pot_delta;
      for (double x : r.rewards) sum_r += x;
      for (double x : r.deltas) sum_d += x;
      bool zero = std::abs(sum_r) < 1e-9 && (c.variant != Variant::kPoker || std::abs(sum_d) < 1e-9);
      double total = 0;
      for (double x : m.rewards()) total += x;
      zero = zero && std::abs(total) < 1e-9;
      if (!zero && nonzero_examples.size() < 3)
        nonzero_examples.push_back(std::string(to_string(c.variant)) + " " + std::to_string(c.players) + "p rewards " +
                                   fmt(sum_r) + " deltas+pot " + fmt(sum_d) + " match " + fmt(total));
      nonzero += !zero;
      kinds[std::string(to_string(c.variant)) + "/" + std::string(to_string(r.kind))]++;
      if (r.kind == GameResult::Kind::kDownplay && c.players == 2 && !c.partnerships) {
        const int lo = std::min(r.tricks[0], r.tricks[1]), hi = std::max(r.tricks[0], r.tricks[1]);
        if (lo == 2 && hi == 4) {
          ++example_seen;
          int most = r.tricks[0] == 4 ? 0 : 1;
          example_bad += !(r.deltas[most] == -1 && r.deltas[1 - most] == 0);
        }
      }
    }
  }
  auto dp = score_downplay({4, 2}, true);
  bool example = dp == std::vector<double>{-1, 0};

  Outcome o;
  o.pass = cell_ok == 44 && cells == 44 && games == kGames && illegal == 0 && lost_cards == 0 && nonzero == 0 &&
           stuck == 0 && example && example_bad == 0;
  o.detail = "min_tricks " + std::to_string(cell_ok) + "/44 cells; " + std::to_string(games) + " self-play games (" +
             std::to_string(moves) + " moves, " + std::to_string(cfgs.size()) +
             " table setups): illegal moves " + std::to_string(illegal) + ", card losses " + std::to_string(lost_cards) +
             ", non-zero-sum results " + std::to_string(nonzero) + ", unfinished " + std::to_string(stuck) +
             "; downplay (4, 2) with 2 players -> " + fmt(dp[0]) + ", engine games matching it " +
             std::to_string(example_seen - example_bad) + "/" + std::to_string(example_seen);
  std::string k;
  for (auto& [name, n] : kinds) k += (k.empty() ? "" : ", ") + name + " " + std::to_string(n);
  o.info.push_back("outcomes: " + k);
  for (auto& x : nonzero_examples) o.info.push_back(x);
  return o;
}

// ---- misere solver ----------------------------------------------------------------

// Every play sequence, no memo or pruning. True when the opponents can force
// the declarer to win a trick.
bool brute_defeated(int seats, std::array<pont::CardSet, 4> hands, const std::array<bool, 4>& active, int declarer,
                    int leader, std::vector<std::pair<int, pont::Card>> trick) {
  using namespace mrt::pont;
  int n = 0;
  for (int s = 0; s < seats; ++s) n += active[s];
  if (static_cast<int>(trick.size()) == n) {
    auto best = trick.front();
    for (auto& pc : trick)
      if (pc.second.suit() == best.second.suit() && pc.second.rank() > best.second.rank()) best = pc;
    if (best.first == declarer) return true;
    return brute_defeated(seats, hands, active, declarer, best.first, {});
  }
  int seat = trick.empty() ? leader : trick.back().first;
  if (!trick.empty()) do
      seat = (seat + 1) % seats;
    while (!active[seat]);
  if (hands[seat] == 0) return false;
  CardSet options = hands[seat];
  if (!trick.empty() && (hands[seat] & suit_mask(trick.front().second.suit())))
    options &= suit_mask(trick.front().second.suit());
  bool any = false, all = true;
  for (Card c : to_vector(options)) {
    auto h = hands;
    h[seat] &= ~c.bit();
    auto t = trick;
    t.push_back({seat, c});
    bool r = brute_defeated(seats, h, active, declarer, leader, t);
    any = any || r;
    all = all && r;
  }
  return seat == declarer ? all : any;
}

bool brute(const pont::OpenPosition& p) {
  std::vector<std::pair<int, pont::Card>> trick;
  int s = p.leader;
  auto hands = p.hands;
  for (auto c : p.trick) {
    trick.push_back({s, c});
    do s = (s + 1) % p.seats;
    while (!p.active[s]);
  }
  return brute_defeated(p.seats, hands, p.active, p.declarer, p.leader, trick);
}

Outcome misere_solver() {
  using namespace mrt::pont;
  struct Curated {
    const char* name;
    int seats;
    std::array<const char*, 4> hands;
    int declarer, leader;
    const char* trick;  // already on the table, led by `leader`
    int inactive;       // -1: everyone plays
    bool defeated;      // verdict worked out by hand
  };
  const std::vector<Curated> suite = {
      {"lowest cards escape", 3, {"6C 6D 6H", "AC AD AH", "KC KD KH", ""}, 0, 0, "", -1, false},
      {"stranded ace", 2, {"AS 6C 6D", "7S 8C 8D", "", ""}, 0, 0, "", -1, true},
      {"one card under", 2, {"6C", "7C", "", ""}, 0, 1, "", -1, false},
      {"discard on a void", 2, {"AH", "6S", "", ""}, 0, 1, "", -1, false},
      {"forced to lead high", 2, {"AH", "6S", "", ""}, 0, 0, "", -1, true},
      {"must follow over the lead", 3, {"AC 6D", "KC 7D", "QC 8D", ""}, 0, 1, "KC", -1, true},
      {"third hand overtakes", 3, {"QC 6D", "JC 7D", "AC 8D", ""}, 0, 1, "JC", -1, false},
      {"run of low clubs", 2, {"6C 7C 8C 9C", "TC JC QC KC", "", ""}, 0, 0, "", -1, false},
      {"singleton ace under a lead", 2, {"AS 6C 6D 6H", "7S 7C 7D 7H", "", ""}, 0, 1, "", -1, true},
      {"ace thrown on a void", 2, {"AS 6C 6D 6H", "7C 7D 7H 8C", "", ""}, 0, 1, "", -1, false},
      {"partner sits out", 4, {"6C 6D 9S", "AC AD 7S", "QH QS 8H", "KC KD 8S"}, 0, 1, "", 2, true},
      {"partner sits out, safe", 4, {"6C 6D 6S", "AC AD 7S", "QH QS 8H", "KC KD AS"}, 0, 1, "", 2, false},
      {"four seats, four cards", 4, {"6C 7D 8H 9S", "AC AD AH AS", "KC KD KH KS", "QC QD QH QS"}, 0, 2, "", -1, false},
      {"four seats, exposed king", 4, {"6C 7D 8H KS", "AC AD AH 6S", "KC KD KH 7S", "QC QD QH 8S"}, 0, 1, "", -1, true},
  };
  int agree = 0, hand_ok = 0, total = 0;
  std::vector<std::string> bad;
  for (const auto& k : suite) {
    OpenPosition p;
    p.seats = k.seats;
    for (int s = 0; s < k.seats; ++s) p.hands[s] = parse_cards(k.hands[s]);
    p.declarer = k.declarer;
    p.leader = k.leader;
    if (k.inactive >= 0) p.active[k.inactive] = false;
    p.trick = to_vector(parse_cards(k.trick));
    bool solver = misere_defeated(p), oracle = brute(p);
    agree += solver == oracle;
    hand_ok += oracle == k.defeated;
    ++total;
    if (solver != oracle || oracle != k.defeated)
      bad.push_back(std::string(k.name) + ": solver " + (solver ? "defeated" : "safe") + ", brute force " +
                    (oracle ? "defeated" : "safe") + ", by hand " + (k.defeated ? "defeated" : "safe"));
  }
  const int curated = total;

  // Seeded endgames up to 4 cards, including ones with a trick in progress
  // and a partner sitting out.
  std::mt19937_64 rng(20261016);
  int defeated = 0;
  for (int trial = 0; trial < 600; ++trial) {
    int seats = 2 + trial % 3;
    int per = 1 + (trial / 3) % 4;
    OpenPosition p;
    p.seats = seats;
    p.declarer = static_cast<int>(rng() % seats);
    if (seats == 4 && trial % 2) p.active[(p.declarer + 2) % 4] = false;
    if (seats == 4 && p.active[(p.declarer + 2) % 4] && per == 4) per = 3;
    auto cards = to_vector(deck_mask(36));
    std::shuffle(cards.begin(), cards.end(), rng);
    std::size_t next = 0;
    for (int s = 0; s < seats; ++s)
      if (p.active[s])
        for (int i = 0; i < per; ++i) p.hands[s] |= cards[next++].bit();
    do p.leader = static_cast<int>(rng() % seats);
    while (!p.active[p.leader]);
    // Sometimes the leader and the next seats have already played one card.
    int played = static_cast<int>(rng() % 3);
    int s = p.leader;
    for (int i = 0; i < played && per > 1; ++i) {
      CardSet h = p.hands[s];
      if (!p.trick.empty() && (h & suit_mask(p.trick.front().suit()))) h &= suit_mask(p.trick.front().suit());
      auto opts = to_vector(h);
      Card c = opts[rng() % opts.size()];
      p.hands[s] &= ~c.bit();
      p.trick.push_back(c);
      do s = (s + 1) % seats;
      while (!p.active[s]);
      if (s == p.leader) break;
    }
    bool oracle = brute(p);
    bool solver = misere_defeated(p);
    agree += solver == oracle;
    defeated += oracle;
    ++total;
    if (solver != oracle) bad.push_back("generated #" + std::to_string(trial));
  }
  Outcome o;
  o.pass = bad.empty() && agree == total && hand_ok == curated && defeated > 60 && defeated < total - curated - 60;
  o.detail = std::to_string(curated) + " curated endgames (verdicts by hand " + std::to_string(hand_ok) + "/" +
             std::to_string(curated) + ") and " + std::to_string(total - curated) +
             " seeded endgames of 1-4 cards: solver agrees with brute force on " + std::to_string(agree) + "/" +
             std::to_string(total) + " (" + std::to_string(defeated) + " generated ones defeated)";
  o.info = bad;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"table reproduction", tables},
      {"AVRG RETURN fixture", avrg},
      {"special-function suite", special_functions},
      {"tree growth", tree_growth},
      {"exponent recovery", exponent_recovery},
      {"fake-chart trading", fake_chart_trading},
      {"engine invariants", engine_invariants},
      {"pont rules", pont_rules},
      {"misere solver", misere_solver},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << '\n';
    for (const auto& line : o.info) std::cout << "     info: " << line << '\n';
    std::cout.flush();
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << '\n';
  return failed ? 1 : 0;
}
