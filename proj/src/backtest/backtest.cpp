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
#include "mrt/backtest/backtest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "mrt/bids/two_bid.hpp"
#include "mrt/core/error.hpp"

namespace mrt::backtest {
namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, std::size_t line, const std::string& what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad " + what + " '" + s + "'", line);
  }
  return v;
}

LevelStats stats_of(const std::vector<const signal::Trade*>& trades) {
  LevelStats s;
  s.num = static_cast<int>(trades.size());
  if (s.num == 0) return s;
  double sum = 0, len = 0;
  for (const auto* t : trades) {
    sum += t->return_pct;
    len += t->duration_days;
  }
  s.ret = sum / s.num;
  s.lngth = len / s.num;
  double var = 0;
  for (const auto* t : trades) var += (t->return_pct - s.ret) * (t->return_pct - s.ret);
  s.ret_std = std::sqrt(var / s.num);
  return s;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string compact_date(Timestamp ts) {
  const std::string iso = format_iso8601(ts);
  return iso.substr(0, 4) + iso.substr(5, 2) + iso.substr(8, 2);
}

}  // namespace

std::vector<QuoteSeries> ingest_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty quotes file", 1);
  ++lineno;
  const auto header = split(trim(line), ',');
  if (header != std::vector<std::string>{"timestamp", "symbol", "price"}) {
    throw ParseError("expected header timestamp,symbol,price", lineno);
  }
  struct Row {
    signal::Quote q;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(f.size()), lineno);
    Timestamp ts = 0;
    try {
      ts = parse_iso8601(f[0]);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (f[1].empty()) throw ParseError("empty symbol", lineno);
    const double price = to_double(f[2], lineno, "price");
    if (!(price > 0) || !std::isfinite(price)) throw ParseError("price must be positive", lineno);
    rows[f[1]].push_back({{ts, price}, lineno});
  }
  std::vector<QuoteSeries> out;
  for (auto& [symbol, list] : rows) {
    std::stable_sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.q.time < b.q.time; });
    QuoteSeries s;
    s.symbol = symbol;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0 && list[i].q.time == list[i - 1].q.time) {
        throw ParseError("duplicate timestamp for " + symbol, std::max(list[i].line, list[i - 1].line));
      }
      s.samples.push_back(list[i].q);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<QuoteSeries> ingest_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return ingest_csv(in);
}

void apply_config_line(BacktestConfig& cfg, const std::string& key, const std::string& value, std::size_t line) {
  auto& e = cfg.engine;
  try {
    if (key == "mode") {
      e.mode = signal::parse_mode(value);
    } else if (key == "trend") {
      e.trend = signal::parse_trend(value);
    } else if (key == "categories") {
      e.categories.clear();
      for (const auto& part : split(value, ',')) {
        const double c = to_double(part, line, "category");
        if (c != std::floor(c)) throw ParseError("category must be an integer", line);
        e.categories.push_back(static_cast<int>(c));
      }
    } else if (key == "beta") {
      e.beta = to_double(value, line, key);
    } else if (key == "decel_threshold") {
      e.decel_threshold = to_double(value, line, key);
    } else if (key == "accel_threshold") {
      e.accel_threshold = to_double(value, line, key);
    } else if (key == "kappa") {
      e.kappa = to_double(value, line, key);
    } else if (key == "shift") {
      e.shift = to_double(value, line, key);
    } else if (key == "depth_cap") {
      const bool label = !value.empty() && std::isalpha(static_cast<unsigned char>(value.back()));
      e.depth_cap = label ? bids::parse_duration(value) : to_double(value, line, key);
    } else if (key == "step_hours") {
      e.step_hours = to_double(value, line, key);
    } else if (key == "cost_pct") {
      cfg.cost_pct = to_double(value, line, key);
    } else {
      throw ParseError("unknown config key '" + key + "'", line);
    }
  } catch (const DomainError& err) {
    throw ParseError(err.what(), line);
  }
}

BacktestConfig parse_config(std::istream& in) {
  BacktestConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno);
  }
  try {
    cfg.engine.validate();
  } catch (const DomainError& err) {
    throw ParseError(err.what(), 0);
  }
  return cfg;
}

BacktestConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return parse_config(in);
}

std::string format_config(const BacktestConfig& cfg) {
  const auto& e = cfg.engine;
  std::ostringstream out;
  out.precision(17);
  out << "mode=" << signal::to_string(e.mode) << '\n';
  out << "trend=" << signal::to_string(e.trend) << '\n';
  out << "categories=";
  for (std::size_t i = 0; i < e.categories.size(); ++i) out << (i ? "," : "") << e.categories[i];
  out << '\n';
  out << "beta=" << e.beta << '\n';
  out << "decel_threshold=" << e.decel_threshold << '\n';
  out << "accel_threshold=" << e.accel_threshold << '\n';
  out << "kappa=" << e.kappa << '\n';
  out << "shift=" << e.shift << '\n';
  out << "depth_cap=" << e.depth_cap << '\n';
  out << "step_hours=" << e.step_hours << '\n';
  out << "cost_pct=" << cfg.cost_pct << '\n';
  return out.str();
}

Metrics compute_metrics(const std::vector<signal::Trade>& trades) {
  Metrics m;
  std::vector<const signal::Trade*> all;
  std::map<int, std::vector<const signal::Trade*>> by_level;
  for (const auto& t : trades) {
    all.push_back(&t);
    by_level[t.level].push_back(&t);
  }
  m.all = stats_of(all);
  for (const auto& [level, list] : by_level) m.levels[level] = stats_of(list);
  return m;
}

BacktestResult run(const BacktestConfig& config, const QuoteSeries& quotes, const Period& period) {
  const auto& s = quotes.samples;
  const auto first = std::lower_bound(s.begin(), s.end(), period.from,
                                      [](const signal::Quote& q, Timestamp t) { return q.time < t; });
  const auto last = std::upper_bound(s.begin(), s.end(), period.to,
                                     [](Timestamp t, const signal::Quote& q) { return t < q.time; });
  if (first >= last) throw DomainError("no quotes for " + quotes.symbol + " in the period");

  signal::SignalEngine engine(config.engine, quotes.symbol);
  signal::PositionBook book(config.engine.mode, config.engine.step_hours, quotes.symbol);
  const auto warmup = static_cast<std::ptrdiff_t>(std::lround(config.engine.depth_cap / config.engine.step_hours));
  for (auto it = first - std::min(warmup, first - s.begin()); it != first; ++it) engine.prime(*it);

  BacktestResult result;
  for (auto it = first; it != last; ++it) {
    const auto trades = book.apply(engine.step(*it));
    result.trades.insert(result.trades.end(), trades.begin(), trades.end());
  }
  const auto& end = *(last - 1);
  const auto closing = book.close_all(end.time, engine.steps_seen() - 1, end.price);
  result.trades.insert(result.trades.end(), closing.begin(), closing.end());
  for (auto& t : result.trades) t.return_pct -= config.cost_pct;
  result.metrics = compute_metrics(result.trades);
  return result;
}

BacktestResult run(const BacktestConfig& config, const std::vector<QuoteSeries>& quotes, const Period& period) {
  BacktestResult out;
  bool any = false;
  for (const auto& q : quotes) {
    try {
      auto r = run(config, q, period);
      out.trades.insert(out.trades.end(), r.trades.begin(), r.trades.end());
      any = true;
    } catch (const DomainError&) {
      // symbol without quotes in this period
    }
  }
  if (!any) throw DomainError("no quotes in the period");
  out.metrics = compute_metrics(out.trades);
  return out;
}

double avrg_return(const std::vector<PeriodStats>& periods) {
  double num = 0, den = 0;
  for (const auto& p : periods) {
    num += p.ret * p.num;
    den += p.lngth * p.num;
  }
  if (den == 0) throw InsufficientData("avrg_return needs a period with positions");
  return 88.0 * num / den;
}

std::optional<double> period_change(const QuoteSeries& series, const Period& period) {
  const signal::Quote* a = nullptr;
  const signal::Quote* b = nullptr;
  for (const auto& q : series.samples) {
    if (q.time < period.from || q.time > period.to) continue;
    if (!a) a = &q;
    b = &q;
  }
  if (!a) return std::nullopt;
  return 100 * (b->price - a->price) / a->price;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string render_period(const PeriodReport& r) {
  std::ostringstream out;
  if (r.period.to > r.period.from) {
    out << "PERIOD: " << compact_date(r.period.from) << '-' << compact_date(r.period.to);
    if (r.benchmark_change) {
      out << ", " << (r.benchmark.empty() ? "BENCHMARK" : r.benchmark) << " CHANGE=" << one_decimal(*r.benchmark_change)
          << '%';
    }
    out << '\n';
  }
  const auto& a = r.metrics.all;
  out << pad("NUM=" + std::to_string(a.num), 12)
      << pad("RET=" + format_number(a.ret) + "(" + format_number(a.ret_std) + ")", 18)
      << pad("LNGTH=" + one_decimal(a.lngth) + "d", 14) << "ALL\n";
  for (const auto& [level, s] : r.metrics.levels) {
    out << pad("num=" + std::to_string(s.num), 12)
        << pad("ret=" + format_number(s.ret) + "(" + format_number(s.ret_std) + ")", 18)
        << pad("lngth=" + one_decimal(s.lngth) + "d", 13) << "lev=" << level << '\n';
  }
  return out.str();
}

std::string render_report(const std::string& title, const std::vector<PeriodReport>& periods) {
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  std::vector<PeriodStats> stats;
  double lngth = 0, change = 0;
  int changes = 0;
  for (const auto& p : periods) {
    stats.push_back({p.metrics.all.num, p.metrics.all.ret, p.metrics.all.lngth});
    lngth += p.metrics.all.lngth;
    if (p.benchmark_change) {
      change += *p.benchmark_change;
      ++changes;
    }
  }
  if (!periods.empty()) {
    out << "AVERAGE POSITION LNGTH: " << one_decimal(lngth / static_cast<double>(periods.size())) << " d;\n";
    try {
      out << "AVERAGE 4 MONTH RETURN: " << format_number(avrg_return(stats)) << '\n';
    } catch (const InsufficientData&) {
      out << "AVERAGE 4 MONTH RETURN: n/a\n";
    }
    if (changes > 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", change / changes);
      out << "AVR " << (periods.front().benchmark.empty() ? "BENCHMARK" : periods.front().benchmark)
          << " 4 MONTH CHANGE: " << buf << '\n';
    }
    out << '\n';
  }
  for (const auto& p : periods) out << render_period(p);
  return out.str();
}

std::string render_report_csv(const std::vector<PeriodReport>& periods) {
  std::ostringstream out;
  out << "period_from,period_to,scope,num,ret,ret_std,lngth\n";
  out.precision(10);
  for (const auto& p : periods) {
    const auto row = [&](const std::string& scope, const LevelStats& s) {
      out << format_iso8601(p.period.from) << ',' << format_iso8601(p.period.to) << ',' << scope << ',' << s.num
          << ',' << s.ret << ',' << s.ret_std << ',' << s.lngth << '\n';
    };
    row("ALL", p.metrics.all);
    for (const auto& [level, s] : p.metrics.levels) row("lev=" + std::to_string(level), s);
  }
  return out.str();
}

}  // namespace mrt::backtest
