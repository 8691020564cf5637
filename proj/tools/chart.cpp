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

#include "chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sparseleak::tools {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kLeft = 70;
constexpr int kRight = 20;
constexpr int kTop = 40;
constexpr int kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string line_chart_svg(const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<ChartSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const ChartSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (first) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        first = false;
      } else {
        x_min = std::min(x_min, s.x[i]);
        x_max = std::max(x_max, s.x[i]);
        y_min = std::min(y_min, s.y[i]);
        y_max = std::max(y_max, s.y[i]);
      }
    }
  }
  if (x_max - x_min < 1e-300) x_max = x_min + 1.0;
  const double pad = (y_max - y_min < 1e-300) ? 1.0 : 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto map_x = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  const auto map_y = [&](double v) {
    return kTop + plot_h - (v - y_min) / (y_max - y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // Axes.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";

  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double fx = x_min + (x_max - x_min) * t / ticks;
    const double px = map_x(fx);
    svg << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << px << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num(fx) << "</text>\n";
    const double fy = y_min + (y_max - y_min) * t / ticks;
    const double py = map_y(fy);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\""
        << kLeft << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num(fy) << "</text>\n";
  }

  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const ChartSeries& s = series[si];
    const char* color = kPalette[si % 4];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      svg << map_x(s.x[i]) << "," << map_y(s.y[i]) << " ";
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 16 * static_cast<double>(si);
    svg << "<line x1=\"" << kLeft + plot_w - 130 << "\" y1=\"" << ly
        << "\" x2=\"" << kLeft + plot_w - 110 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + plot_w - 104 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
        << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sparseleak::tools
