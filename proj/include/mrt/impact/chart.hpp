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
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace mrt::impact {

struct ChartSeries {
  Eigen::VectorXd times;   // hours, strictly increasing
  Eigen::VectorXd values;
  std::string meta;

  Eigen::Index size() const { return times.size(); }
  // Throws DomainError when times are not strictly increasing or values are not finite.
  void validate() const;
};

Eigen::VectorXd uniform_grid(double from, double to, double step);

// Which part of the model chart to emit. kSuper and kUltra keep only the
// term built on g(., 1) or g(. + 12, 3).
enum class ChartComponent { kFull, kSuper, kUltra };

ChartComponent parse_component(const std::string& name);

double fake_chart_value(double t, ChartComponent component = ChartComponent::kFull);
ChartSeries fake_chart(const Eigen::VectorXd& grid, ChartComponent component = ChartComponent::kFull);

struct EnvelopePeak {
  double t;
  double amplitude;
};

// Envelope extrema of |value|. An oscillating chart gives one peak per lobe
// between sign changes (at least 3 complete lobes needed); otherwise every local
// maximum counts, with flat tops taken once at their midpoint. Peaks are
// refined by a parabola through the neighbours.
std::vector<EnvelopePeak> envelope_peaks(const ChartSeries& chart);

// Log-log least-squares slope of the |value| envelope. A monotone |value|
// (no interior extrema) is fitted sample by sample.
double estimate_exponent(const ChartSeries& chart);

void write_chart_csv(std::ostream& out, const ChartSeries& chart);
ChartSeries read_chart_csv(std::istream& in);

}  // namespace mrt::impact
