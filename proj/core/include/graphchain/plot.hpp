// Copyright 2026 The graphchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace graphchain {

struct PlotSpec {
  std::string x;
  std::string y;
  /// Column splitting rows into lines; empty for a single line.
  std::string series;
  std::string title;
};

struct PlotSeries {
  std::string name;
  /// (x, mean y) sorted by x.
  std::vector<std::pair<double, double>> points;
};

/// Reads a CSV with a header row (lines starting with '#' are skipped) and
/// averages the y column per (series, x).
std::vector<PlotSeries> series_from_csv(std::istream& in, const PlotSpec& spec);

/// Line chart with axes, ticks and a legend.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotSpec& spec,
                       int width = 640, int height = 400);

}  // namespace graphchain
