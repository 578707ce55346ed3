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

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/metrics.hpp"
#include "chanchart/text.hpp"

namespace chanchart {

// Chart CSV layout: header z1..zD' plus, when ground truth is available,
// px,py(,pz); one row per point. Values are written in shortest round-trip
// form, so re-reading reproduces the chart bit-exactly.

inline void write_chart_csv(const Chart& chart, const PointSet* positions, std::ostream& out) {
  if (positions && positions->count() != chart.count())
    throw DomainError("chart and positions disagree on the number of points");
  for (std::size_t c = 0; c < chart.dimension; ++c) {
    if (c) out << ',';
    out << 'z' << (c + 1);
  }
  if (positions) {
    const char* names[3] = {"px", "py", "pz"};
    for (std::size_t d = 0; d < positions->dimension; ++d) out << ',' << names[d];
  }
  out << '\n';
  for (std::size_t i = 0; i < chart.count(); ++i) {
    for (std::size_t c = 0; c < chart.dimension; ++c) {
      if (c) out << ',';
      out << format_double(chart.at(i, c));
    }
    if (positions)
      for (std::size_t d = 0; d < positions->dimension; ++d)
        out << ',' << format_double(positions->at(i, d));
    out << '\n';
  }
}

inline std::pair<Chart, std::optional<PointSet>> read_chart_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("no data: empty chart CSV", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_fields(line);
  std::size_t chart_dim = 0;
  while (chart_dim < header.size() && header[chart_dim] == "z" + std::to_string(chart_dim + 1))
    ++chart_dim;
  if (chart_dim == 0)
    throw ParseError("chart CSV header must start with z1, z2, ...; got '" + line + "'", 1);
  std::size_t pos_dim = header.size() - chart_dim;
  const char* names[3] = {"px", "py", "pz"};
  if (pos_dim > 3) throw ParseError("chart CSV header has too many position columns", 1);
  for (std::size_t d = 0; d < pos_dim; ++d)
    if (header[chart_dim + d] != names[d])
      throw ParseError("chart CSV header: expected position column '" + std::string(names[d]) +
                           "', got '" + std::string(header[chart_dim + d]) + "'",
                       1);

  std::vector<double> coords, positions;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_csv_fields(line);
    if (fields.size() != chart_dim + pos_dim)
      throw ParseError("line " + std::to_string(line_number) + ": expected " +
                           std::to_string(chart_dim + pos_dim) + " fields, got " +
                           std::to_string(fields.size()),
                       line_number);
    for (std::size_t c = 0; c < chart_dim; ++c) coords.push_back(parse_double(fields[c], line_number));
    for (std::size_t d = 0; d < pos_dim; ++d)
      positions.push_back(parse_double(fields[chart_dim + d], line_number));
  }
  if (coords.empty()) throw ParseError("no data: chart CSV holds no rows", line_number);
  Chart chart(chart_dim, std::move(coords));
  std::optional<PointSet> pos;
  if (pos_dim > 0) pos = PointSet(pos_dim, std::move(positions));
  return {std::move(chart), std::move(pos)};
}

// Quality-curve CSV: K,CT,TW with one row per neighborhood size.

inline void write_quality_csv(const QualityCurve& ct, const QualityCurve& tw, std::ostream& out) {
  if (ct.neighborhood_sizes != tw.neighborhood_sizes || ct.scores.size() != tw.scores.size())
    throw DomainError("CT and TW curves disagree on their K grid");
  out << "K,CT,TW\n";
  for (std::size_t r = 0; r < ct.scores.size(); ++r)
    out << ct.neighborhood_sizes[r] << ',' << format_double(ct.scores[r]) << ','
        << format_double(tw.scores[r]) << '\n';
}

struct QualityRows {
  std::vector<double> k;
  std::vector<double> ct;
  std::vector<double> tw;
};

inline QualityRows read_quality_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("no data: empty curves CSV", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_fields(line);
  if (header.size() != 3 || header[0] != "K" || header[1] != "CT" || header[2] != "TW")
    throw ParseError("curves CSV header must be 'K,CT,TW'", 1);
  QualityRows rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_csv_fields(line);
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(line_number) + ": expected 3 fields", line_number);
    rows.k.push_back(parse_double(fields[0], line_number));
    rows.ct.push_back(parse_double(fields[1], line_number));
    rows.tw.push_back(parse_double(fields[2], line_number));
  }
  if (rows.k.empty()) throw ParseError("no data: curves CSV holds no rows", line_number);
  return rows;
}

/// Full row-major distance matrix dump, for debugging.
inline void write_distance_matrix_csv(const DistanceMatrix& matrix, std::ostream& out) {
  const std::size_t n = matrix.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j) out << ',';
    out << 'c' << j;
  }
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    auto row = matrix.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

}  // namespace chanchart
