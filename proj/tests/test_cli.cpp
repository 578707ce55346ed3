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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include "chanchart/cli.hpp"
#include "support/oracles.hpp"

using namespace chanchart;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("chanchart_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string small_config() {
  return
      "# compact test scenario\n"
      "center_frequency_hz = 3.5e9\n"
      "bandwidth_hz = 2e7\n"
      "subcarrier_count = 4\n"
      "array_kind = ula\n"
      "antennas_h = 8\n"
      "user_count = 60\n"
      "area_xmin_m = -80\n"
      "area_xmax_m = 80\n"
      "area_ymin_m = 20\n"
      "area_ymax_m = 120\n"
      "paths_per_user = 2\n"
      "los_probability = 1\n"
      "scatterer_count = 8\n"
      "snr_db = 15\n"
      "snapshot_count = 2\n"
      "rng_seed = 12\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

/// Dataset with two well-separated channel clusters, written to disk.
void write_cluster_dataset(const std::string& path) {
  std::vector<ChannelVector> channels;
  for (int i = 0; i < 4; ++i)
    channels.emplace_back(std::vector<cdouble>{{1.0, 0.01 * i}, {0.0, 0.0}}, 2, 1);
  for (int i = 0; i < 4; ++i)
    channels.emplace_back(std::vector<cdouble>{{0.0, 0.0}, {1.0, 0.01 * i}}, 2, 1);
  ChannelDataset dataset(std::move(channels), {1e9});
  write_dataset_file(dataset, path);
}

}  // namespace

TEST_CASE("generate from a config file prints the key=value summary") {
  TempDir tmp;
  {
    std::ofstream config(tmp.file("scene.cfg"));
    config << small_config();
  }
  auto result = cli({"generate", "--config", tmp.file("scene.cfg"), "--output", tmp.file("d.bin")});
  REQUIRE(result.code == 0);
  CHECK(result.out.find("n=60\n") != std::string::npos);
  CHECK(result.out.find("a=8\n") != std::string::npos);
  CHECK(result.out.find("s=4\n") != std::string::npos);
  CHECK(result.out.find("m=32\n") != std::string::npos);
  CHECK(result.out.find("seed=12\n") != std::string::npos);

  ChannelDataset dataset = read_dataset_file(tmp.file("d.bin"));
  CHECK(dataset.size() == 60);
  CHECK(dataset.has_positions());
}

TEST_CASE("generate with the quadriga-like preset hits the published dimensions") {
  TempDir tmp;
  auto result = cli({"generate", "--preset", "quadriga-like", "--output", tmp.file("q.bin")});
  REQUIRE(result.code == 0);
  CHECK(result.out.find("n=2048\n") != std::string::npos);
  CHECK(result.out.find("m=32\n") != std::string::npos);
}

TEST_CASE("generate usage errors exit with status 2") {
  TempDir tmp;
  CHECK(cli({"generate", "--preset", "quadriga-like"}).code == 2);  // no output path
  CHECK(cli({"generate", "--output", tmp.file("x.bin")}).code == 2);  // no source
  CHECK(cli({"generate", "--preset", "nope", "--output", tmp.file("x.bin")}).code == 2);

  {
    std::ofstream config(tmp.file("bad.cfg"));
    config << "user_count = 60\nmystery_key = 3\n";
  }
  auto result = cli({"generate", "--config", tmp.file("bad.cfg"), "--output", tmp.file("x.bin")});
  CHECK(result.code == 2);
  CHECK(result.err.find("line 2") != std::string::npos);
}

TEST_CASE("generate reports unreadable config as an I/O failure") {
  TempDir tmp;
  auto result = cli({"generate", "--config", tmp.file("missing.cfg"), "--output", tmp.file("x.bin")});
  CHECK(result.code == 3);
}

TEST_CASE("chart writes a CSV with coordinates plus positions and prints timings") {
  TempDir tmp;
  {
    std::ofstream config(tmp.file("scene.cfg"));
    config << small_config();
  }
  REQUIRE(cli({"generate", "--config", tmp.file("scene.cfg"), "--output", tmp.file("d.bin")}).code == 0);

  auto result = cli({"chart", tmp.file("d.bin"), tmp.file("chart.csv"), "--k", "8"});
  REQUIRE(result.code == 0);
  for (const char* key : {"time_distance_s=", "time_graph_s=", "time_geodesics_s=", "time_mds_s=",
                          "geodesic_stress="})
    CHECK(result.out.find(key) != std::string::npos);

  std::ifstream csv(tmp.file("chart.csv"));
  auto [chart, positions] = read_chart_csv(csv);
  CHECK(chart.count() == 60);
  CHECK(chart.dimension == 2);
  REQUIRE(positions.has_value());
  CHECK(positions->dimension == 2);

  auto normalized = cli({"chart", tmp.file("d.bin"), tmp.file("chart_n.csv"), "--k", "8",
                         "--measure", "normalized"});
  CHECK(normalized.code == 0);
  CHECK(slurp(tmp.file("chart_n.csv")) != slurp(tmp.file("chart.csv")));
}

TEST_CASE("chart exits 4 with the stage name when the graph cannot be repaired") {
  TempDir tmp;
  write_cluster_dataset(tmp.file("clusters.bin"));
  auto result = cli({"chart", tmp.file("clusters.bin"), tmp.file("chart.csv"), "--k", "1",
                     "--connectivity", "fail"});
  CHECK(result.code == 4);
  CHECK(result.err.find("graph") != std::string::npos);
  CHECK(result.out.find("time_distance_s=") != std::string::npos);  // completed stage still timed
}

TEST_CASE("chart runs are byte-identical across thread counts") {
  TempDir tmp;
  {
    std::ofstream config(tmp.file("scene.cfg"));
    config << small_config();
  }
  REQUIRE(cli({"generate", "--config", tmp.file("scene.cfg"), "--output", tmp.file("d.bin")}).code == 0);
  REQUIRE(cli({"chart", tmp.file("d.bin"), tmp.file("t1.csv"), "--k", "8", "--threads", "1"}).code == 0);
  REQUIRE(cli({"chart", tmp.file("d.bin"), tmp.file("t8.csv"), "--k", "8", "--threads", "8"}).code == 0);
  CHECK(slurp(tmp.file("t1.csv")) == slurp(tmp.file("t8.csv")));
}

TEST_CASE("chart can dump the distance matrix for debugging") {
  TempDir tmp;
  write_cluster_dataset(tmp.file("clusters.bin"));
  auto result = cli({"chart", tmp.file("clusters.bin"), tmp.file("chart.csv"), "--k", "7",
                     "--dump-distances", tmp.file("dist.csv")});
  REQUIRE(result.code == 0);
  std::string dump = slurp(tmp.file("dist.csv"));
  CHECK(count_occurrences(dump, "\n") == 9);  // header + 8 rows
}

TEST_CASE("evaluate scores a chart and validates its inputs") {
  TempDir tmp;
  {
    std::ofstream config(tmp.file("scene.cfg"));
    config << small_config();
  }
  REQUIRE(cli({"generate", "--config", tmp.file("scene.cfg"), "--output", tmp.file("d.bin")}).code == 0);

  // a 'chart' equal to the ground-truth positions scores exactly 1
  ChannelDataset dataset = read_dataset_file(tmp.file("d.bin"));
  {
    std::ofstream perfect(tmp.file("perfect.csv"));
    Chart as_chart(2, std::vector<double>(dataset.positions().values));
    write_chart_csv(as_chart, nullptr, perfect);
  }
  auto result = cli({"evaluate", tmp.file("perfect.csv"), tmp.file("d.bin"), "--k-list", "1:1:5",
                     "--output", tmp.file("q.csv")});
  REQUIRE(result.code == 0);
  CHECK(result.out.find("mean_ct=1\n") != std::string::npos);
  CHECK(result.out.find("mean_tw=1\n") != std::string::npos);
  std::ifstream q(tmp.file("q.csv"));
  QualityRows rows = read_quality_csv(q);
  CHECK(rows.k.size() == 5);

  // K beyond (2N-1)/3 names the offender
  auto bad_k = cli({"evaluate", tmp.file("perfect.csv"), tmp.file("d.bin"), "--k-list", "5,55",
                    "--output", tmp.file("q2.csv")});
  CHECK(bad_k.code == 2);
  CHECK(bad_k.err.find("55") != std::string::npos);

  // dataset without ground truth is rejected
  {
    ChannelDataset no_positions(std::vector<ChannelVector>(dataset.channels()),
                                std::vector<double>(dataset.frequency_grid()));
    write_dataset_file(no_positions, tmp.file("nopos.bin"));
  }
  auto no_truth = cli({"evaluate", tmp.file("perfect.csv"), tmp.file("nopos.bin"), "--output",
                       tmp.file("q3.csv")});
  CHECK(no_truth.code == 2);
  CHECK(no_truth.err.find("ground truth required") != std::string::npos);
}

TEST_CASE("plot scatter draws one circle per point") {
  TempDir tmp;
  {
    std::ofstream chart(tmp.file("chart.csv"));
    chart << "z1,z2,px,py\n1,2,0,0\n3,4,10,0\n-1,0.5,0,10\n";
  }
  auto result = cli({"plot", tmp.file("chart.csv"), "--kind", "scatter", "--output",
                     tmp.file("chart.svg")});
  REQUIRE(result.code == 0);
  std::string svg = slurp(tmp.file("chart.svg"));
  CHECK(count_occurrences(svg, "<circle") == 3);
  CHECK(svg.find("<svg") != std::string::npos);

  // identical inputs give identical bytes
  REQUIRE(cli({"plot", tmp.file("chart.csv"), "--kind", "scatter", "--output",
               tmp.file("again.svg")}).code == 0);
  CHECK(slurp(tmp.file("chart.svg")) == slurp(tmp.file("again.svg")));
}

TEST_CASE("plot curves draws two polylines with one vertex per row") {
  TempDir tmp;
  {
    std::ofstream curves(tmp.file("q.csv"));
    curves << "K,CT,TW\n";
    for (int k = 1; k <= 10; ++k)
      curves << k << ',' << (0.5 + 0.04 * k) << ',' << (0.4 + 0.05 * k) << '\n';
  }
  auto result = cli({"plot", tmp.file("q.csv"), "--kind", "curves", "--output", tmp.file("q.svg")});
  REQUIRE(result.code == 0);
  std::string svg = slurp(tmp.file("q.svg"));
  CHECK(count_occurrences(svg, "<polyline") == 2);

  // each polyline has 10 "x,y" vertices
  std::size_t pos = 0;
  for (int line = 0; line < 2; ++line) {
    pos = svg.find("points=\"", pos);
    REQUIRE(pos != std::string::npos);
    std::size_t end = svg.find('"', pos + 8);
    std::string points = svg.substr(pos + 8, end - pos - 8);
    CHECK(count_occurrences(points, ",") == 10);
    pos = end;
  }
}

TEST_CASE("plot rejects empty and non-2-D inputs") {
  TempDir tmp;
  {
    std::ofstream empty(tmp.file("empty.csv"));
    empty << "";
  }
  auto result = cli({"plot", tmp.file("empty.csv"), "--kind", "scatter", "--output",
                     tmp.file("x.svg")});
  CHECK(result.code == 2);
  CHECK(result.err.find("no data") != std::string::npos);

  {
    std::ofstream chart(tmp.file("c3.csv"));
    chart << "z1,z2,z3\n1,2,3\n";
  }
  CHECK(cli({"plot", tmp.file("c3.csv"), "--kind", "scatter", "--output", tmp.file("x.svg")}).code ==
        2);
}

TEST_CASE("unknown subcommands and flags exit 2") {
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"chart", "--nope"}).code == 2);
  CHECK(cli({}).code == 2);
}
