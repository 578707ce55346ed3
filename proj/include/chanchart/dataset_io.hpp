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

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"

namespace chanchart {

// Binary dataset format, little-endian throughout:
//   magic "CCH1" | u32 N | u32 A | u32 S | u8 D (0 = no positions)
//   | f64 frequency_grid[S]
//   | per channel: f64 interleaved (re, im) x A*S
//   | if D > 0: f64 positions[N][D]
inline constexpr char kDatasetMagic[4] = {'C', 'C', 'H', '1'};

namespace detail {

class ByteWriter {
 public:
  explicit ByteWriter(std::ostream& sink) : sink_(sink) {}

  void bytes(const char* data, std::size_t count) {
    sink_.write(data, static_cast<std::streamsize>(count));
    if (!sink_) throw IoError("write failed at byte offset " + std::to_string(offset_), offset_);
    offset_ += count;
  }
  void u32(std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    bytes(b, 4);
  }
  void u8(std::uint8_t v) {
    char b = static_cast<char>(v);
    bytes(&b, 1);
  }
  void f64(double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    bytes(b, 8);
  }
  std::uint64_t offset() const { return offset_; }

 private:
  std::ostream& sink_;
  std::uint64_t offset_ = 0;
};

class ByteReader {
 public:
  explicit ByteReader(std::istream& source) : source_(source) {}

  // Returns the number of bytes actually read (may be short at EOF).
  std::size_t bytes_some(char* data, std::size_t count) {
    source_.read(data, static_cast<std::streamsize>(count));
    std::size_t got = static_cast<std::size_t>(source_.gcount());
    offset_ += got;
    return got;
  }
  void bytes_exact(const char* what, char* data, std::size_t count) {
    std::size_t got = bytes_some(data, count);
    if (got != count)
      throw TruncationError(std::string("truncated while reading ") + what + ": expected " +
                                std::to_string(count) + " bytes, got " + std::to_string(got),
                            count, got);
  }
  std::uint32_t u32(const char* what) {
    char b[4];
    bytes_exact(what, b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  std::uint8_t u8(const char* what) {
    char b;
    bytes_exact(what, &b, 1);
    return static_cast<std::uint8_t>(b);
  }
  double f64(const char* what) {
    char b[8];
    bytes_exact(what, b, 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return std::bit_cast<double>(bits);
  }
  std::uint64_t offset() const { return offset_; }

 private:
  std::istream& source_;
  std::uint64_t offset_ = 0;
};

}  // namespace detail

/// Serialize a dataset into `sink`; returns the number of bytes written.
/// Round-trips bit-exactly with read_dataset.
inline std::uint64_t write_dataset(const ChannelDataset& dataset, std::ostream& sink) {
  detail::ByteWriter w(sink);
  w.bytes(kDatasetMagic, 4);
  w.u32(static_cast<std::uint32_t>(dataset.size()));
  w.u32(dataset.antenna_count());
  w.u32(dataset.subcarrier_count());
  std::uint8_t pos_dim = dataset.has_positions() ? static_cast<std::uint8_t>(dataset.positions().dimension) : 0;
  w.u8(pos_dim);
  for (double f : dataset.frequency_grid()) w.f64(f);
  for (const ChannelVector& h : dataset.channels()) {
    for (const cdouble& v : h.entries()) {
      w.f64(v.real());
      w.f64(v.imag());
    }
  }
  if (pos_dim > 0) {
    const PointSet& p = dataset.positions();
    for (double v : p.values) w.f64(v);
  }
  sink.flush();
  if (!sink) throw IoError("flush failed at byte offset " + std::to_string(w.offset()), w.offset());
  return w.offset();
}

/// Parse a dataset from `source`. Malformed input is rejected, never repaired.
inline ChannelDataset read_dataset(std::istream& source) {
  detail::ByteReader r(source);
  char magic[4];
  r.bytes_exact("magic", magic, 4);
  if (std::memcmp(magic, kDatasetMagic, 4) != 0)
    throw FormatError("bad magic: not a chanchart dataset stream");
  std::uint32_t n = r.u32("channel count");
  std::uint32_t a = r.u32("antenna count");
  std::uint32_t s = r.u32("subcarrier count");
  std::uint8_t pos_dim = r.u8("position dimension");
  if (n == 0) throw FormatError("dataset declares zero channels");
  if (a == 0 || s == 0)
    throw DomainError("dataset header violates A >= 1, S >= 1 (A*S mismatch with payload)");
  if (pos_dim != 0 && pos_dim != 2 && pos_dim != 3)
    throw FormatError("position dimension must be 0, 2 or 3; got " + std::to_string(pos_dim));

  std::vector<double> grid(s);
  for (std::uint32_t i = 0; i < s; ++i) grid[i] = r.f64("frequency grid");

  std::size_t m = static_cast<std::size_t>(a) * s;
  std::vector<ChannelVector> channels;
  channels.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<cdouble> entries(m);
    std::vector<char> raw(16 * m);
    std::size_t got = r.bytes_some(raw.data(), raw.size());
    if (got != raw.size())
      throw TruncationError("stream truncated inside channel " + std::to_string(i) + ": expected " +
                                std::to_string(raw.size()) + " bytes, got " + std::to_string(got),
                            raw.size(), got);
    for (std::size_t k = 0; k < m; ++k) {
      std::uint64_t re_bits = 0, im_bits = 0;
      for (int b = 0; b < 8; ++b) {
        re_bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[16 * k + b])) << (8 * b);
        im_bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[16 * k + 8 + b])) << (8 * b);
      }
      entries[k] = {std::bit_cast<double>(re_bits), std::bit_cast<double>(im_bits)};
    }
    channels.emplace_back(std::move(entries), a, s);
  }

  std::optional<PointSet> positions;
  if (pos_dim > 0) {
    std::vector<double> flat(static_cast<std::size_t>(n) * pos_dim);
    for (double& v : flat) v = r.f64("positions");
    positions = PointSet(pos_dim, std::move(flat));
  }
  return ChannelDataset(std::move(channels), std::move(grid), std::move(positions));
}

inline std::uint64_t write_dataset_file(const ChannelDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing", 0);
  return write_dataset(dataset, out);
}

inline ChannelDataset read_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading", 0);
  return read_dataset(in);
}

/// Parse channels from CSV text: each row holds 2*A*S reals (interleaved
/// re, im per entry), optionally followed by 2 or 3 ground-truth position
/// columns. All rows must have the same width. Imported datasets get a
/// placeholder unit frequency grid f_s = s (Hz), s = 1..S, since CSV carries
/// no carrier information; distances and charting never consult the grid.
inline ChannelDataset import_csv(std::istream& source, std::uint32_t antennas,
                                 std::uint32_t subcarriers) {
  if (antennas == 0 || subcarriers == 0)
    throw DomainError("import_csv needs A >= 1 and S >= 1");
  std::size_t m = static_cast<std::size_t>(antennas) * subcarriers;
  std::size_t channel_fields = 2 * m;

  std::vector<ChannelVector> channels;
  std::vector<double> flat_positions;
  std::size_t pos_dim = 0;  // fixed by the first row
  bool first_row = true;

  std::string line;
  std::size_t line_number = 0;
  std::vector<double> fields;
  while (std::getline(source, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // skip blank lines
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    fields.clear();
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string_view cell(line.data() + pos, (comma == std::string::npos ? line.size() : comma) - pos);
      // trim spaces
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("row " + std::to_string(line_number) + ": field " +
                             std::to_string(fields.size() + 1) + " is not a number",
                         line_number);
      fields.push_back(value);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }

    if (first_row) {
      if (fields.size() == channel_fields)
        pos_dim = 0;
      else if (fields.size() == channel_fields + 2)
        pos_dim = 2;
      else if (fields.size() == channel_fields + 3)
        pos_dim = 3;
      else
        throw ParseError("row " + std::to_string(line_number) + ": expected " +
                             std::to_string(channel_fields) + " channel fields (optionally +2 or +3 " +
                             "position columns), got " + std::to_string(fields.size()),
                         line_number);
      first_row = false;
    } else if (fields.size() != channel_fields + pos_dim) {
      throw ParseError("row " + std::to_string(line_number) + ": ragged row, expected " +
                           std::to_string(channel_fields + pos_dim) + " fields, got " +
                           std::to_string(fields.size()),
                       line_number);
    }

    std::vector<cdouble> entries(m);
    for (std::size_t k = 0; k < m; ++k) entries[k] = {fields[2 * k], fields[2 * k + 1]};
    channels.emplace_back(std::move(entries), antennas, subcarriers);
    for (std::size_t d = 0; d < pos_dim; ++d) flat_positions.push_back(fields[channel_fields + d]);
  }
  if (channels.empty()) throw ParseError("CSV stream holds no data rows", line_number);

  std::vector<double> grid(subcarriers);
  for (std::uint32_t s = 0; s < subcarriers; ++s) grid[s] = static_cast<double>(s + 1);
  std::optional<PointSet> positions;
  if (pos_dim > 0) positions = PointSet(pos_dim, std::move(flat_positions));
  return ChannelDataset(std::move(channels), std::move(grid), std::move(positions),
                        "imported from CSV");
}

}  // namespace chanchart
