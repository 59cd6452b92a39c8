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

#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mrt/backtest/backtest.hpp"
#include "mrt/bids/tables.hpp"
#include "mrt/core/error.hpp"
#include "mrt/impact/chart.hpp"
#include "mrt/optimize/optimizer.hpp"
#include "mrt/pont/match.hpp"
#include "mrt/service/service.hpp"

namespace mrt::cli {

using nlohmann::json;

namespace {

// Bad flag combinations found after parsing; exit 2 like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  return f;
}

backtest::Period parse_period(const std::string& from, const std::string& to) {
  backtest::Period p{parse_iso8601(from), parse_iso8601(to)};
  if (p.to < p.from) throw UsageError("--to is before --from");
  return p;
}

// defaults < --config file < --set key=value
backtest::BacktestConfig engine_config(const std::string& path, const std::vector<std::string>& sets) {
  backtest::BacktestConfig cfg = path.empty() ? backtest::BacktestConfig{} : backtest::load_config(path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
    backtest::apply_config_line(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.engine.validate();
  return cfg;
}

// ---- tables, charts ------------------------------------------------------

struct TablesOpts {
  std::string kind = "all";
  std::string format = "text";
};

int run_tables(const TablesOpts& o, std::ostream& out) {
  std::vector<bids::TableKind> kinds;
  if (o.kind == "all") {
    kinds = {bids::TableKind::kSuper, bids::TableKind::kUltra, bids::TableKind::kExtra,
             bids::TableKind::kRegular, bids::TableKind::kMin4Cat, bids::TableKind::kMin7Cat};
  } else {
    kinds = {bids::parse_table_kind(o.kind)};
  }
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    auto t = bids::render_table(kinds[i]);
    if (i) out << '\n';
    out << (o.format == "csv" ? bids::to_csv(t) : bids::to_text(t));
  }
  return kExitOk;
}

struct ChartOpts {
  std::string out;
  std::string component = "full";
  double from = 1, to = 150, step = 1;
};

int run_fake_chart(const ChartOpts& o, std::ostream& out) {
  auto chart = impact::fake_chart(impact::uniform_grid(o.from, o.to, o.step), impact::parse_component(o.component));
  auto f = open_out(o.out);
  impact::write_chart_csv(f, chart);
  out << "wrote " << chart.size() << " samples to " << o.out << '\n';
  return kExitOk;
}

int run_estimate(const std::string& path, std::ostream& out) {
  auto f = open_in(path);
  auto chart = impact::read_chart_csv(f);
  double r = impact::estimate_exponent(chart);
  out << std::fixed << std::setprecision(4) << "r=" << r << " peaks=" << impact::envelope_peaks(chart).size()
      << " samples=" << chart.size() << '\n';
  return kExitOk;
}

// ---- backtest, optimize, weights -----------------------------------------

struct BacktestOpts {
  std::string quotes, config, from, to, report = "text", benchmark, title = "BACKTEST";
  std::vector<std::string> sets;
  bool show_config = false;
};

int run_backtest(const BacktestOpts& o, std::ostream& out) {
  auto cfg = engine_config(o.config, o.sets);
  if (o.show_config) {
    out << backtest::format_config(cfg);
    return kExitOk;
  }
  auto period = parse_period(o.from, o.to);
  auto quotes = backtest::ingest_csv_file(o.quotes);
  auto res = backtest::run(cfg, quotes, period);
  backtest::PeriodReport rep{period, res.metrics, o.benchmark, std::nullopt};
  if (!o.benchmark.empty()) {
    auto it = std::find_if(quotes.begin(), quotes.end(), [&](const auto& q) { return q.symbol == o.benchmark; });
    if (it == quotes.end()) throw DomainError("benchmark symbol " + o.benchmark + " not in quotes");
    rep.benchmark_change = backtest::period_change(*it, period);
  }
  out << (o.report == "csv" ? backtest::render_report_csv({rep}) : backtest::render_report(o.title, {rep}));
  return kExitOk;
}

struct OptimizeOpts {
  std::string quotes, config, from, to, out, results, band;
  std::vector<std::string> sets;
  std::uint64_t seed = 1;
  int restarts = 0;
  int max_outer = 6;
  double min_education_hours = 126 * 6.5;
  bool show_config = false;
};

std::string params_path(const std::string& out, const std::string& symbol, bool many) {
  if (!many) return out;
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + "." + symbol + p.extension().string())).string();
}

int run_optimize(const OptimizeOpts& o, std::ostream& out) {
  auto base = engine_config(o.config, o.sets);
  opt::OptOptions opts;
  opts.seed = o.seed;
  opts.restarts = o.restarts;
  opts.max_outer = o.max_outer;
  opts.min_education_hours = o.min_education_hours;
  if (!o.band.empty()) {
    auto colon = o.band.find(':');
    if (colon == std::string::npos) throw UsageError("--band expects LO:HI in days");
    try {
      opts.duration_band = opt::DurationBand{std::stod(o.band.substr(0, colon)), std::stod(o.band.substr(colon + 1))};
    } catch (const std::exception&) {
      throw UsageError("--band expects LO:HI in days");
    }
  }
  std::string results = o.results;
  if (results.empty()) results = std::filesystem::path(o.out).replace_extension(".json").string();
  if (o.show_config) {
    out << backtest::format_config(base) << "seed=" << opts.seed << "\nrestarts=" << opts.restarts
        << "\nmax_outer=" << opts.max_outer << "\nmin_education_hours=" << opts.min_education_hours
        << "\nband=" << (o.band.empty() ? "off" : o.band) << "\nresults=" << results << '\n';
    return kExitOk;
  }
  auto period = parse_period(o.from, o.to);
  auto quotes = backtest::ingest_csv_file(o.quotes);
  if (quotes.empty()) throw InsufficientData("no quotes in " + o.quotes);
  auto space = opt::ParamSpace::standard(base);
  std::vector<opt::OptResult> all;
  for (const auto& q : quotes) {
    auto r = opt::optimize(space, {q}, period, opts);
    r.symbol = q.symbol;
    auto path = params_path(o.out, q.symbol, quotes.size() > 1);
    auto f = open_out(path);
    f << "# " << q.symbol << " return per position " << backtest::format_number(r.education_return) << '\n'
      << backtest::format_config(r.best);
    out << q.symbol << " ret=" << backtest::format_number(r.education_return) << " num=" << r.trades
        << " lngth=" << backtest::format_number(r.lngth) << (r.in_band ? "" : " band=missed") << " -> " << path
        << '\n';
    all.push_back(std::move(r));
  }
  auto f = open_out(results);
  f << opt::results_to_json(all) << '\n';
  return kExitOk;
}

int run_weights(const std::string& path, const std::string& rule, std::ostream& out) {
  auto f = open_in(path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto w = opt::weights(opt::results_from_json(ss.str()), opt::parse_weight_spec(rule));
  out << "symbol,weight\n";
  for (const auto& [sym, v] : w) out << sym << ',' << backtest::format_number(v) << '\n';
  return kExitOk;
}

// ---- pont ----------------------------------------------------------------

struct PontOpts {
  std::string config, data, host = "127.0.0.1", variant;
  std::vector<std::string> seats;
  int players = 0, port = 8080, games = 1;
  std::uint64_t seed = 1;
  int bot_samples = 0;
  bool partnerships = false, strict = false, show_config = false;
};

std::string data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv(service::kDataDirEnv);
  return env ? env : "";
}

// defaults < --config JSON < flags. `given` says which flags were on the command line.
json game_config(const PontOpts& o, const CLI::App& cmd) {
  json c = json::object();
  if (!o.config.empty()) {
    auto f = open_in(o.config);
    try {
      c = json::parse(f);
    } catch (const json::exception& e) {
      throw DomainError(o.config + ": " + e.what());
    }
    if (!c.is_object()) throw DomainError(o.config + ": expected a JSON object");
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--players")) c["players"] = o.players;
  if (given("--variant")) c["variant"] = o.variant;
  if (given("--partnerships")) c["partnerships"] = o.partnerships;
  if (given("--strict")) c["strict_scoring"] = o.strict;
  if (given("--bot-samples")) c["bot_samples"] = o.bot_samples;
  if (given("--seed") || !c.contains("seed")) c["seed"] = o.seed;
  if (!c.contains("players")) c["players"] = o.seats.empty() ? 3 : static_cast<int>(o.seats.size());
  return pont::to_json(pont::config_from_json(c));
}

volatile std::sig_atomic_t g_stop = 0;
extern "C" void on_signal(int) { g_stop = 1; }

int run_serve(const PontOpts& o, std::ostream& out) {
  std::string dir = data_dir(o.data);
  if (o.show_config) {
    out << json{{"host", o.host}, {"port", o.port}, {"stream_port", o.port + 1}, {"data", dir}}.dump() << '\n';
    return kExitOk;
  }
  service::PontService svc({dir});
  service::Server server(svc, o.host, o.port);
  g_stop = 0;
  auto old_int = std::signal(SIGINT, on_signal);
  auto old_term = std::signal(SIGTERM, on_signal);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done && !g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  std::exception_ptr failure;
  std::thread runner([&] {
    try {
      server.run();
    } catch (...) {
      failure = std::current_exception();
    }
    done = true;
  });
  if (server.wait_ready(5000))
    out << "serving http://" << o.host << ':' << server.http_port() << "/api/v1 stream " << server.stream_port()
        << " data " << (dir.empty() ? "(memory)" : dir) << std::endl;
  runner.join();
  done = true;
  watcher.join();
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  if (failure) std::rethrow_exception(failure);
  return kExitOk;
}

std::string cards_text(const json& cards) {
  std::string s;
  for (const auto& c : cards) s += (s.empty() ? "" : " ") + c.get<std::string>();
  return s.empty() ? "-" : s;
}

void render_view(const json& v, std::ostream& out) {
  int seat = v["seat"];
  out << "\n== game " << v["game_index"].get<int>() + 1 << ", dealer " << v["dealer"] << ", " << v["phase"].get<std::string>()
      << ", seat " << v["to_act"] << " to act\n";
  for (const auto& h : v["hands"]) {
    int t = h["seat"];
    out << (t == seat ? " *" : "  ") << "seat " << t << " [" << h["count"] << "] ";
    out << (h["cards"].empty() ? "" : cards_text(h["cards"]));
    if (!h["active"].get<bool>()) out << " (out)";
    const json& b = v["auction"]["last_bids"][t];
    if (!b.is_null()) out << "  bid " << b["bid"].get<std::string>() << " (" << b["name"].get<std::string>() << ")";
    if (v["auction"]["passed"][t].get<bool>() && v["contract"].is_null()) out << " passed";
    out << "  tricks " << v["tricks_won"][t] << "  score " << v["scores"][t] << '\n';
  }
  if (!v["contract"].is_null()) out << "  contract: " << v["contract"]["text"].get<std::string>() << '\n';
  if (v["downplay"].get<bool>()) out << "  downplay\n";
  if (v.contains("poker")) out << "  pot " << v["poker"]["pot"] << "  sectors " << v["poker"]["sectors"].dump() << '\n';
  if (!v["trick"]["cards"].empty()) {
    out << "  trick:";
    for (const auto& c : v["trick"]["cards"]) out << ' ' << c["seat"] << ':' << c["card"].get<std::string>();
    out << '\n';
  }
}

void print_events(const json& events, std::ostream& out) {
  for (const auto& e : events) {
    const json& ev = e["event"];
    if (ev["type"] != "action") continue;
    const json& a = ev["action"];
    std::string what = a["type"];
    out << "  seat " << a["seat"] << ' ' << what;
    if (a.contains("bid")) out << ' ' << a["bid"].get<std::string>();
    if (a.contains("card")) out << ' ' << a["card"].get<std::string>();
    if (a.contains("amount")) out << ' ' << a["amount"];
    if (a.contains("tricks")) out << ' ' << a["tricks"] << ' ' << a["trump"].get<std::string>();
    if (a.value("misere", false)) out << " misere";
    out << '\n';
  }
}

json must(json r) {
  if (!r.value("ok", false)) {
    const json& e = r["error"];
    std::string code = e.value("code", "");
    if (code == "illegal-action") throw IllegalAction(e.value("reason", ""));
    throw DomainError(code + ": " + e.value("reason", ""));
  }
  return r;
}

int run_play(PontOpts o, const CLI::App& cmd, std::istream& in, std::ostream& out) {
  json cfg = game_config(o, cmd);
  int players = cfg["players"];
  if (o.seats.empty()) {
    o.seats.assign(players, "bot");
    o.seats[0] = "human";
  }
  if (static_cast<int>(o.seats.size()) != players)
    throw UsageError("--seats lists " + std::to_string(o.seats.size()) + " seats for " + std::to_string(players) +
                     " players");
  for (const auto& s : o.seats)
    if (s != "human" && s != "bot") throw UsageError("--seats takes human or bot, not '" + s + "'");
  if (o.games < 1) throw UsageError("--games must be at least 1");
  if (o.show_config) {
    out << json{{"config", cfg}, {"seats", o.seats}, {"games", o.games}, {"data", data_dir(o.data)}}.dump() << '\n';
    return kExitOk;
  }

  service::PontService svc({data_dir(o.data)});
  auto call = [&](const std::string& op, json body) {
    body["v"] = service::kProtocolVersion;
    body["op"] = op;
    return must(svc.handle(body));
  };
  json created = call("create", {{"config", cfg}, {"seats", o.seats}});
  std::string id = created["session"];
  out << "session " << id << '\n';
  print_events(call("events", {{"session", id}, {"seat", -1}, {"from", 0}})["events"], out);

  for (int game = 0;;) {
    json st = call("state", {{"session", id}, {"seat", -1}});
    const json& v = st["state"];
    if (v["phase"] == "over") {
      const json& r = v["result"];
      out << "game " << game + 1 << ": " << r["kind"].get<std::string>();
      if (!r["contract"].is_null()) out << ' ' << r["contract"]["text"].get<std::string>();
      out << " tricks " << r["tricks"].dump() << " deltas " << r["deltas"].dump() << " scores "
          << v["scores"].dump() << '\n';
      if (++game == o.games) break;
      json n = call("next", {{"session", id}, {"seat", 0}, {"seq", st["seq"]}});
      print_events(n["events"], out);
      continue;
    }
    int who = v["controller"];
    json view = call("state", {{"session", id}, {"seat", who}});
    render_view(view["state"], out);
    const json& legal = view["state"]["legal"];
    for (std::size_t i = 0; i < legal.size(); ++i) {
      out << "  " << i + 1 << ") " << legal[i]["label"].get<std::string>();
      if (legal[i].contains("name")) out << " (" << legal[i]["name"].get<std::string>() << ")";
      out << '\n';
    }
    json choice;
    while (choice.is_null()) {
      out << "seat " << who << "> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) throw DomainError("input ended before the game finished");
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.erase(0, 1);
      if (line.empty()) continue;
      if (line == "q" || line == "quit") {
        out << "quit\n";
        return kExitOk;
      }
      char* end = nullptr;
      long k = std::strtol(line.c_str(), &end, 10);
      if (*end == '\0' && k >= 1 && k <= static_cast<long>(legal.size())) {
        choice = legal[k - 1];
        break;
      }
      for (const auto& a : legal)
        if (a["label"] == line) choice = a;
      if (choice.is_null()) out << "  not a legal choice: " << line << '\n';
    }
    choice.erase("label");
    choice.erase("name");
    json r = call("submit", {{"session", id}, {"seat", who}, {"seq", view["seq"]}, {"action", choice}});
    print_events(r["events"], out);
  }
  return kExitOk;
}

const CLI::App* deepest(const CLI::App& app) {
  for (const auto* sub : app.get_subcommands()) return deepest(*sub);
  return &app;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Market-impact bid tables, signal backtests and pont.", "mrt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  TablesOpts tables;
  auto* c_tables = app.add_subcommand("tables", "Print bid tables");
  c_tables->add_option("--kind", tables.kind, "super, ultra, extra, regular, min-4cat, min-7cat or all")
      ->check(CLI::IsMember({"super", "ultra", "extra", "regular", "min-4cat", "min-7cat", "all"}))
      ->capture_default_str();
  c_tables->add_option("--format", tables.format)->check(CLI::IsMember({"text", "csv"}))->capture_default_str();

  ChartOpts chart;
  auto* c_chart = app.add_subcommand("fake-chart", "Write the model chart as time_h,value CSV");
  c_chart->add_option("--out", chart.out, "Output CSV")->required();
  c_chart->add_option("--component", chart.component, "full, super (g1 term) or ultra (g3 term)")
      ->check(CLI::IsMember({"full", "super", "ultra", "g1", "g3"}))
      ->capture_default_str();
  c_chart->add_option("--from", chart.from, "First hour")->capture_default_str();
  c_chart->add_option("--to", chart.to, "Last hour")->capture_default_str();
  c_chart->add_option("--step", chart.step, "Grid step, hours")->capture_default_str();

  std::string chart_in;
  auto* c_est = app.add_subcommand("estimate-r", "Fit the envelope exponent of a chart CSV");
  c_est->add_option("--in", chart_in, "Chart CSV")->required();

  BacktestOpts bt;
  auto* c_bt = app.add_subcommand("backtest", "Replay the signal engine over quotes");
  c_bt->add_option("--quotes", bt.quotes, "CSV timestamp,symbol,price")->required();
  c_bt->add_option("--config", bt.config, "key=value engine config");
  c_bt->add_option("--set", bt.sets, "key=value, overrides the config file")->take_all();
  c_bt->add_option("--from", bt.from, "Period start, ISO 8601")->required();
  c_bt->add_option("--to", bt.to, "Period end, ISO 8601, inclusive")->required();
  c_bt->add_option("--report", bt.report)->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  c_bt->add_option("--benchmark", bt.benchmark, "Symbol whose period change is reported");
  c_bt->add_option("--title", bt.title)->capture_default_str();
  c_bt->add_flag("--show-config", bt.show_config, "Print the effective config and exit");

  OptimizeOpts op;
  auto* c_opt = app.add_subcommand("optimize", "Search engine parameters on an education period");
  c_opt->add_option("--quotes", op.quotes, "CSV timestamp,symbol,price")->required();
  c_opt->add_option("--from", op.from, "Education start")->required();
  c_opt->add_option("--to", op.to, "Education end, inclusive")->required();
  c_opt->add_option("--out", op.out, "params.conf; one file per symbol when there are several")->required();
  c_opt->add_option("--results", op.results, "JSON results for weights (default: --out with .json)");
  c_opt->add_option("--config", op.config, "Base config: mode, depth cap, step, cost");
  c_opt->add_option("--set", op.sets, "key=value, overrides the config file")->take_all();
  c_opt->add_option("--seed", op.seed)->capture_default_str();
  c_opt->add_option("--restarts", op.restarts, "Extra random starting points")->capture_default_str();
  c_opt->add_option("--max-outer", op.max_outer)->capture_default_str();
  c_opt->add_option("--min-education-hours", op.min_education_hours)->capture_default_str();
  c_opt->add_option("--band", op.band, "Mean duration band in days, LO:HI");
  c_opt->add_flag("--show-config", op.show_config, "Print the effective config and exit");

  std::string w_results, w_rule = "cutoff:0";
  auto* c_w = app.add_subcommand("weights", "Portfolio weights from optimize results");
  c_w->add_option("--results", w_results, "JSON written by optimize")->required();
  c_w->add_option("--rule", w_rule, "cutoff:PCT, proportional or top-k:K")->capture_default_str();

  PontOpts po;
  auto* c_pont = app.add_subcommand("pont", "Pont service and terminal play");
  c_pont->require_subcommand(1);
  auto* c_serve = c_pont->add_subcommand("serve", "Serve pont sessions over HTTP and a line-JSON stream");
  c_serve->add_option("--port", po.port, "HTTP port; the stream uses port + 1; 0 picks free ports")
      ->check(CLI::Range(0, 65534))
      ->capture_default_str();
  c_serve->add_option("--host", po.host)->capture_default_str();
  c_serve->add_option("--data", po.data, std::string("Session directory (default $") + service::kDataDirEnv + ")");
  c_serve->add_flag("--show-config", po.show_config, "Print the effective config and exit");

  auto* c_play = c_pont->add_subcommand("play", "Play in the terminal through the service layer");
  c_play->add_option("--seats", po.seats, "human or bot per seat, comma separated")->delimiter(',');
  c_play->add_option("--config", po.config, "Game config JSON");
  c_play->add_option("--players", po.players)->check(CLI::Range(2, 4));
  c_play->add_option("--variant", po.variant)->check(CLI::IsMember({"full", "basic", "poker"}));
  c_play->add_flag("--partnerships", po.partnerships);
  c_play->add_flag("--strict", po.strict, "Strict scoring");
  c_play->add_option("--seed", po.seed)->capture_default_str();
  c_play->add_option("--bot-samples", po.bot_samples)->check(CLI::PositiveNumber);
  c_play->add_option("--games", po.games)->capture_default_str();
  c_play->add_option("--data", po.data, std::string("Session directory (default $") + service::kDataDirEnv + ")");
  c_play->add_flag("--show-config", po.show_config, "Print the effective config and exit");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "mrt: usage: " << one_line(e.what()) << '\n';
    out << deepest(app)->help();
    return kExitUsage;
  }

  try {
    if (c_tables->parsed()) return run_tables(tables, out);
    if (c_chart->parsed()) return run_fake_chart(chart, out);
    if (c_est->parsed()) return run_estimate(chart_in, out);
    if (c_bt->parsed()) return run_backtest(bt, out);
    if (c_opt->parsed()) return run_optimize(op, out);
    if (c_w->parsed()) return run_weights(w_results, w_rule, out);
    if (c_serve->parsed()) return run_serve(po, out);
    if (c_play->parsed()) return run_play(po, *c_play, in, out);
  } catch (const UsageError& e) {
    err << "mrt: usage: " << one_line(e.what()) << '\n';
    out << deepest(app)->help();
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "mrt: parse-error: " << one_line(e.what()) << '\n';
    return kExitDomain;
  } catch (const InsufficientData& e) {
    err << "mrt: insufficient-data: " << one_line(e.what()) << '\n';
    return kExitDomain;
  } catch (const IllegalAction& e) {
    err << "mrt: illegal-action: " << one_line(e.what()) << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "mrt: error: " << one_line(e.what()) << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace mrt::cli
