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
#include "mrt/impact/chart.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "mrt/bids/two_bid.hpp"
#include "mrt/core/error.hpp"

namespace mrt::impact {
namespace {

constexpr Eigen::Index kMinSamples = 30;
constexpr std::size_t kMinPeaks = 3;

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = x[i];
    rhs(i) = y[i];
  }
  Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return coef(1);
}

double parse_double(const std::string& field, int line) {
  double v = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("bad number '" + field + "'", line);
  return v;
}

}  // namespace

void ChartSeries::validate() const {
  if (times.size() != values.size()) throw DomainError("chart times and values differ in length");
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times(i)) || !std::isfinite(values(i))) throw DomainError("chart holds a non-finite sample");
    if (i > 0 && !(times(i) > times(i - 1))) throw DomainError("chart times must be strictly increasing");
  }
}

Eigen::VectorXd uniform_grid(double from, double to, double step) {
  if (!(step > 0) || to < from) throw DomainError("bad grid");
  const auto n = static_cast<Eigen::Index>(std::floor((to - from) / step + 1e-9)) + 1;
  Eigen::VectorXd grid(n);
  // i * step rather than accumulation, so the grid is exact at integer hours
  for (Eigen::Index i = 0; i < n; ++i) grid(i) = from + static_cast<double>(i) * step;
  return grid;
}

ChartComponent parse_component(const std::string& name) {
  if (name == "full") return ChartComponent::kFull;
  if (name == "super" || name == "g1") return ChartComponent::kSuper;
  if (name == "ultra" || name == "g3") return ChartComponent::kUltra;
  throw DomainError("unknown chart component: " + name);
}

double fake_chart_value(double t, ChartComponent component) {
  if (t < 1.0) throw DomainError("model chart is defined for t >= 1h");
  constexpr double two_pi = 2 * std::numbers::pi;
  const double phase = two_pi * std::log(t);
  double v = 0;
  if (component != ChartComponent::kUltra) {
    v += 0.4 * (1 - std::sin(t) / 3) * std::cos(phase) * bids::g(t, 1);
  }
  if (component != ChartComponent::kSuper) {
    v += 0.5 * (1 - std::sin(t / 5) / 3) * std::sin(phase) * bids::g(t + 12, 3);
  }
  return v;
}

ChartSeries fake_chart(const Eigen::VectorXd& grid, ChartComponent component) {
  ChartSeries out;
  out.times = grid;
  out.values.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) out.values(i) = fake_chart_value(grid(i), component);
  switch (component) {
    case ChartComponent::kFull: out.meta = "model chart"; break;
    case ChartComponent::kSuper: out.meta = "model chart, g1 term"; break;
    case ChartComponent::kUltra: out.meta = "model chart, g3 term"; break;
  }
  out.validate();
  return out;
}

namespace {

EnvelopePeak refine(const ChartSeries& chart, const Eigen::VectorXd& a, Eigen::Index i) {
  const double y0 = a(i - 1), y1 = a(i), y2 = a(i + 1);
  const double den = y0 - 2 * y1 + y2;
  const double h_left = chart.times(i) - chart.times(i - 1);
  const double h_right = chart.times(i + 1) - chart.times(i);
  if (den < 0 && std::abs(h_left - h_right) < 1e-9 * (h_left + h_right)) {
    const double dx = 0.5 * (y0 - y2) / den;
    return {chart.times(i) + dx * h_right, y1 - 0.25 * (y0 - y2) * dx};
  }
  return {chart.times(i), y1};
}

// One peak per complete lobe between sign changes. Floored g-curves put small
// steps on the slopes, which would otherwise show up as extra local maxima.
std::vector<EnvelopePeak> lobe_peaks(const ChartSeries& chart, const Eigen::VectorXd& a) {
  std::vector<EnvelopePeak> peaks;
  const Eigen::Index n = a.size();
  auto sign = [&](Eigen::Index i) { return chart.values(i) > 0 ? 1 : (chart.values(i) < 0 ? -1 : 0); };
  Eigen::Index start = -1;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (sign(i) == sign(i - 1) || sign(i) == 0) continue;
    if (start >= 0) {
      Eigen::Index best = start;
      for (Eigen::Index k = start; k < i; ++k) {
        if (a(k) > a(best)) best = k;
      }
      if (best > start && best + 1 < i) {
        peaks.push_back(refine(chart, a, best));
      } else {
        peaks.push_back({chart.times(best), a(best)});
      }
    }
    start = i;
  }
  return peaks;
}

}  // namespace

std::vector<EnvelopePeak> envelope_peaks(const ChartSeries& chart) {
  const Eigen::VectorXd a = chart.values.cwiseAbs();
  auto lobes = lobe_peaks(chart, a);
  if (lobes.size() >= kMinPeaks) return lobes;

  std::vector<EnvelopePeak> peaks;
  const Eigen::Index n = a.size();
  Eigen::Index i = 1;
  while (i + 1 < n) {
    if (!(a(i) > a(i - 1))) {
      ++i;
      continue;
    }
    Eigen::Index j = i;
    while (j + 1 < n && a(j + 1) == a(i)) ++j;  // plateau
    if (j + 1 >= n) break;
    if (a(j + 1) < a(i)) {
      if (j == i) {
        peaks.push_back(refine(chart, a, i));
      } else {
        peaks.push_back({0.5 * (chart.times(i) + chart.times(j)), a(i)});
      }
    }
    i = j + 1;
  }
  return peaks;
}

double estimate_exponent(const ChartSeries& chart) {
  chart.validate();
  if (chart.size() < kMinSamples) {
    throw InsufficientData("exponent estimate needs at least " + std::to_string(kMinSamples) + " samples");
  }
  if (!(chart.times(0) > 0)) throw DomainError("exponent estimate needs positive times");

  const Eigen::VectorXd a = chart.values.cwiseAbs();
  bool rising = true, falling = true;
  for (Eigen::Index i = 1; i < a.size(); ++i) {
    rising = rising && a(i) >= a(i - 1);
    falling = falling && a(i) <= a(i - 1);
  }
  std::vector<double> x, y;
  if (rising || falling) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a(i) > 0) {
        x.push_back(std::log(chart.times(i)));
        y.push_back(std::log(a(i)));
      }
    }
    if (x.size() < 2) throw InsufficientData("chart is identically zero");
    return fit_slope(x, y);
  }

  const auto peaks = envelope_peaks(chart);
  for (const auto& p : peaks) {
    if (p.amplitude > 0 && p.t > 0) {
      x.push_back(std::log(p.t));
      y.push_back(std::log(p.amplitude));
    }
  }
  if (x.size() < kMinPeaks) {
    throw InsufficientData("exponent estimate needs at least 3 envelope extrema, found " + std::to_string(x.size()));
  }
  return fit_slope(x, y);
}

void write_chart_csv(std::ostream& out, const ChartSeries& chart) {
  out << "t_hours,value\n";
  char buf[64];
  for (Eigen::Index i = 0; i < chart.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g,%.17g\n", chart.times(i), chart.values(i));
    out << buf;
  }
}

ChartSeries read_chart_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty chart file", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_hours,value") throw ParseError("expected header t_hours,value", lineno);
  std::vector<double> t, v;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected two fields", lineno);
    t.push_back(parse_double(line.substr(0, comma), lineno));
    v.push_back(parse_double(line.substr(comma + 1), lineno));
  }
  ChartSeries chart;
  chart.times = Eigen::Map<Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()));
  chart.values = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  chart.meta = "csv";
  chart.validate();
  return chart;
}

}  // namespace mrt::impact
