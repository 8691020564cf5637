// Copyright 2026 The sparseleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPARSELEAK_TOOLS_CHART_HPP_
#define SPARSELEAK_TOOLS_CHART_HPP_

#include <string>
#include <vector>

namespace sparseleak::tools {

struct ChartSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal self-contained SVG line chart: axes with ticks, one polyline per
// series, a legend.  No dependency; output is deterministic.
std::string line_chart_svg(const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<ChartSeries>& series);

}  // namespace sparseleak::tools

#endif  // SPARSELEAK_TOOLS_CHART_HPP_
