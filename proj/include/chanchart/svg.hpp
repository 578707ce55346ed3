// SPDX-License-Identifier: Apache-2.0
//
// chanchart - channel charting toolkit for massive MIMO channels
// Copyright (C) 2026 the chanchart authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/csv.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/text.hpp"

namespace chanchart {

// Self-contained deterministic SVG emitters: no timestamps, fixed float
// formatting, stable element order.

namespace detail {

struct SvgFrame {
  double width = 640.0, height = 520.0;
  double left = 64.0, right = 24.0, top = 24.0, bottom = 48.0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;

  double sx(double x) const {
    double span = xmax - xmin;
    double u = span > 0.0 ? (x - xmin) / span : 0.5;
    return left + u * (width - left - right);
  }
  double sy(double y) const {
    double span = ymax - ymin;
    double u = span > 0.0 ? (y - ymin) / span : 0.5;
    return height - bottom - u * (height - top - bottom);
  }
};

inline void svg_open(std::ostream& out, const SvgFrame& f) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(f.width, 0)
      << "\" height=\"" << format_fixed(f.height, 0) << "\" viewBox=\"0 0 "
      << format_fixed(f.width, 0) << ' ' << format_fixed(f.height, 0) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << format_fixed(f.width, 0) << "\" height=\""
      << format_fixed(f.height, 0) << "\" fill=\"white\"/>\n";
}

inline void svg_axes(std::ostream& out, const SvgFrame& f, const std::string& xlabel,
                     const std::string& ylabel) {
  double x0 = f.left, x1 = f.width - f.right;
  double y0 = f.height - f.bottom, y1 = f.top;
  out << "<line x1=\"" << format_fixed(x0, 1) << "\" y1=\"" << format_fixed(y0, 1) << "\" x2=\""
      << format_fixed(x1, 1) << "\" y2=\"" << format_fixed(y0, 1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << format_fixed(x0, 1) << "\" y1=\"" << format_fixed(y0, 1) << "\" x2=\""
      << format_fixed(x0, 1) << "\" y2=\"" << format_fixed(y1, 1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  auto tick = [&](double px, double py, const std::string& text, bool on_x) {
    out << "<text x=\"" << format_fixed(px, 1) << "\" y=\"" << format_fixed(py, 1)
        << "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\""
        << (on_x ? "middle" : "end") << "\">" << text << "</text>\n";
  };
  tick(x0, y0 + 16.0, format_double(f.xmin), true);
  tick(x1, y0 + 16.0, format_double(f.xmax), true);
  tick(x0 - 6.0, y0 + 4.0, format_double(f.ymin), false);
  tick(x0 - 6.0, y1 + 4.0, format_double(f.ymax), false);
  out << "<text x=\"" << format_fixed((x0 + x1) / 2.0, 1) << "\" y=\""
      << format_fixed(f.height - 10.0, 1)
      << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << format_fixed((y0 + y1) / 2.0, 1)
      << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << format_fixed((y0 + y1) / 2.0, 1) << ")\">" << ylabel << "</text>\n";
}

inline std::string position_color(double u, double v) {
  int r = static_cast<int>(std::lround(40.0 + 200.0 * u));
  int g = static_cast<int>(std::lround(40.0 + 200.0 * v));
  return "rgb(" + std::to_string(r) + "," + std::to_string(g) + ",150)";
}

}  // namespace detail

/// 2-D chart scatter, one circle per point, colored by a smooth mapping of
/// the ground-truth position when one is given.
inline void render_scatter_svg(const Chart& chart, const PointSet* positions, std::ostream& out) {
  if (chart.dimension != 2) throw DomainError("scatter plot needs a 2-D chart");
  if (chart.count() == 0) throw DomainError("no data: chart is empty");
  if (positions && positions->count() != chart.count())
    throw DomainError("chart and positions disagree on the number of points");

  detail::SvgFrame frame;
  frame.xmin = frame.xmax = chart.at(0, 0);
  frame.ymin = frame.ymax = chart.at(0, 1);
  for (std::size_t i = 0; i < chart.count(); ++i) {
    frame.xmin = std::min(frame.xmin, chart.at(i, 0));
    frame.xmax = std::max(frame.xmax, chart.at(i, 0));
    frame.ymin = std::min(frame.ymin, chart.at(i, 1));
    frame.ymax = std::max(frame.ymax, chart.at(i, 1));
  }

  double pxmin = 0.0, pxspan = 1.0, pymin = 0.0, pyspan = 1.0;
  if (positions) {
    pxmin = pymin = std::numeric_limits<double>::infinity();
    double pxmax = -pxmin, pymax = -pymin;
    for (std::size_t i = 0; i < positions->count(); ++i) {
      pxmin = std::min(pxmin, positions->at(i, 0));
      pxmax = std::max(pxmax, positions->at(i, 0));
      pymin = std::min(pymin, positions->at(i, 1));
      pymax = std::max(pymax, positions->at(i, 1));
    }
    pxspan = pxmax - pxmin;
    pyspan = pymax - pymin;
  }

  detail::svg_open(out, frame);
  detail::svg_axes(out, frame, "z1", "z2");
  for (std::size_t i = 0; i < chart.count(); ++i) {
    std::string color = "#4878a8";
    if (positions) {
      double u = pxspan > 0.0 ? (positions->at(i, 0) - pxmin) / pxspan : 0.5;
      double v = pyspan > 0.0 ? (positions->at(i, 1) - pymin) / pyspan : 0.5;
      color = detail::position_color(u, v);
    }
    out << "<circle cx=\"" << format_fixed(frame.sx(chart.at(i, 0)), 2) << "\" cy=\""
        << format_fixed(frame.sy(chart.at(i, 1)), 2) << "\" r=\"2.5\" fill=\"" << color
        << "\" fill-opacity=\"0.8\"/>\n";
  }
  out << "</svg>\n";
}

/// CT/TW versus K: two polylines with a small legend.
inline void render_curves_svg(const QualityRows& rows, std::ostream& out) {
  if (rows.k.empty()) throw DomainError("no data: curves table is empty");
  detail::SvgFrame frame;
  frame.xmin = *std::min_element(rows.k.begin(), rows.k.end());
  frame.xmax = *std::max_element(rows.k.begin(), rows.k.end());
  frame.ymin = 0.0;
  frame.ymax = 1.0;

  detail::svg_open(out, frame);
  detail::svg_axes(out, frame, "K", "score");
  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < rows.k.size(); ++r) {
      if (r) out << ' ';
      out << format_fixed(frame.sx(rows.k[r]), 2) << ',' << format_fixed(frame.sy(ys[r]), 2);
    }
    out << "\"/>\n";
  };
  polyline(rows.ct, "#1f77b4");
  polyline(rows.tw, "#d62728");
  double lx = frame.width - frame.right - 120.0, ly = frame.top + 10.0;
  out << "<rect x=\"" << format_fixed(lx - 8.0, 1) << "\" y=\"" << format_fixed(ly - 12.0, 1)
      << "\" width=\"110\" height=\"38\" fill=\"white\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  out << "<line x1=\"" << format_fixed(lx, 1) << "\" y1=\"" << format_fixed(ly, 1) << "\" x2=\""
      << format_fixed(lx + 24.0, 1) << "\" y2=\"" << format_fixed(ly, 1)
      << "\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  out << "<text x=\"" << format_fixed(lx + 30.0, 1) << "\" y=\"" << format_fixed(ly + 4.0, 1)
      << "\" font-size=\"12\" font-family=\"sans-serif\">continuity</text>\n";
  out << "<line x1=\"" << format_fixed(lx, 1) << "\" y1=\"" << format_fixed(ly + 18.0, 1)
      << "\" x2=\"" << format_fixed(lx + 24.0, 1) << "\" y2=\"" << format_fixed(ly + 18.0, 1)
      << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  out << "<text x=\"" << format_fixed(lx + 30.0, 1) << "\" y=\"" << format_fixed(ly + 22.0, 1)
      << "\" font-size=\"12\" font-family=\"sans-serif\">trustworthiness</text>\n";
  out << "</svg>\n";
}

}  // namespace chanchart
