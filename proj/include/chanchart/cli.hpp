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

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chanchart/csv.hpp"
#include "chanchart/dataset_io.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/generator.hpp"
#include "chanchart/metrics.hpp"
#include "chanchart/pca.hpp"
#include "chanchart/pipeline.hpp"
#include "chanchart/scenario.hpp"
#include "chanchart/svg.hpp"
#include "chanchart/text.hpp"

namespace chanchart {

// Exit status contract (stable for scripting):
//   0 success | 2 usage or validation | 3 I/O failure | 4 pipeline stage failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitStage = 4;

namespace cli_detail {

/// Parse a K list: either comma-separated values ("5,10,25") or an inclusive
/// range "start:step:end" ("5:5:250").
inline std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  auto parse_one = [&](const std::string& token) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0)
      throw DomainError("invalid K '" + token + "' in K list");
    return value;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ':')) parts.push_back(token);
    if (parts.size() != 3) throw DomainError("K range must be start:step:end");
    std::size_t start = parse_one(parts[0]), step = parse_one(parts[1]), stop = parse_one(parts[2]);
    for (std::size_t k = start; k <= stop; k += step) ks.push_back(k);
  } else {
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) ks.push_back(parse_one(token));
  }
  if (ks.empty()) throw DomainError("K list is empty");
  return ks;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing", 0);
  return out;
}

inline void flush_or_throw(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed", 0);
}

struct GenerateArgs {
  std::string config_path;
  std::string preset;
  std::string output;
  unsigned threads = 0;
};

struct ChartArgs {
  std::string dataset;
  std::string output;
  std::size_t dim = 2;
  std::size_t k = 30;
  std::string measure = "phase-insensitive";
  std::string connectivity = "bridge";
  std::string dump_distances;
  unsigned threads = 0;
};

struct EvaluateArgs {
  std::string chart_csv;
  std::string dataset;
  std::string k_list = "5,10,25,50";
  std::string output;
  unsigned threads = 0;
};

struct PlotArgs {
  std::string input;
  std::string kind;
  std::string output;
};

inline int do_generate(const GenerateArgs& args, std::ostream& out) {
  if (args.config_path.empty() == args.preset.empty())
    throw DomainError("generate needs exactly one of --config or --preset");
  ScenarioConfig config;
  if (!args.preset.empty()) {
    if (args.preset == "quadriga-like") config = preset_quadriga_like();
    else if (args.preset == "deepmimo-like") config = preset_deepmimo_like();
    else throw DomainError("unknown preset '" + args.preset + "' (quadriga-like, deepmimo-like)");
  } else {
    std::ifstream in(args.config_path);
    if (!in) throw IoError("cannot open '" + args.config_path + "' for reading", 0);
    config = read_scenario_config(in);
  }
  ChannelDataset dataset = generate_scenario(config, resolve_threads(args.threads));
  write_dataset_file(dataset, args.output);
  out << "n=" << dataset.size() << "\n";
  out << "a=" << dataset.antenna_count() << "\n";
  out << "s=" << dataset.subcarrier_count() << "\n";
  out << "m=" << dataset.dimension() << "\n";
  out << "seed=" << config.rng_seed << "\n";
  return kExitOk;
}

inline int do_chart(const ChartArgs& args, std::ostream& out, std::ostream& err) {
  ChannelDataset dataset = read_dataset_file(args.dataset);
  ChartingOptions options;
  options.target_dim = args.dim;
  options.neighbors = args.k;
  options.measure = parse_measure(args.measure);
  options.connectivity = parse_connectivity_policy(args.connectivity);
  options.threads = resolve_threads(args.threads);

  StageTimings progress;
  auto print_timings = [&] {
    if (progress.distance) out << "time_distance_s=" << format_double(*progress.distance) << "\n";
    if (progress.graph) out << "time_graph_s=" << format_double(*progress.graph) << "\n";
    if (progress.geodesics) out << "time_geodesics_s=" << format_double(*progress.geodesics) << "\n";
    if (progress.mds) out << "time_mds_s=" << format_double(*progress.mds) << "\n";
  };

  ChartingRun run;
  try {
    run = chart_channels_run(dataset, options, &progress, !args.dump_distances.empty());
  } catch (const StageError& e) {
    print_timings();
    err << "error: " << e.what() << "\n";
    return kExitStage;
  }
  print_timings();
  out << "geodesic_stress=" << format_double(run.embedding.geodesic_stress) << "\n";

  if (!args.dump_distances.empty()) {
    std::ofstream dump = open_output(args.dump_distances);
    write_distance_matrix_csv(*run.distances, dump);
    flush_or_throw(dump, args.dump_distances);
  }
  std::ofstream csv = open_output(args.output);
  write_chart_csv(run.embedding.chart, dataset.has_positions() ? &dataset.positions() : nullptr, csv);
  flush_or_throw(csv, args.output);
  return kExitOk;
}

inline int do_evaluate(const EvaluateArgs& args, std::ostream& out) {
  ChannelDataset dataset = read_dataset_file(args.dataset);
  if (!dataset.has_positions()) throw DomainError("ground truth required: dataset has no positions");
  std::ifstream in(args.chart_csv);
  if (!in) throw IoError("cannot open '" + args.chart_csv + "' for reading", 0);
  auto [chart, embedded_positions] = read_chart_csv(in);
  if (chart.count() != dataset.size())
    throw DomainError("chart has " + std::to_string(chart.count()) + " rows but the dataset holds " +
                      std::to_string(dataset.size()) + " channels");

  std::vector<std::size_t> ks = parse_k_list(args.k_list);
  unsigned threads = resolve_threads(args.threads);
  auto [ct, tw] = quality_curves(dataset.positions(), chart, ks, threads);

  std::ofstream csv = open_output(args.output);
  write_quality_csv(ct, tw, csv);
  flush_or_throw(csv, args.output);

  double mean_ct = 0.0, mean_tw = 0.0;
  for (double v : ct.scores) mean_ct += v;
  for (double v : tw.scores) mean_tw += v;
  mean_ct /= static_cast<double>(ct.scores.size());
  mean_tw /= static_cast<double>(tw.scores.size());
  out << "mean_ct=" << format_double(mean_ct) << "\n";
  out << "mean_tw=" << format_double(mean_tw) << "\n";
  return kExitOk;
}

inline int do_plot(const PlotArgs& args) {
  std::ifstream in(args.input);
  if (!in) throw IoError("cannot open '" + args.input + "' for reading", 0);
  std::ofstream svg = open_output(args.output);
  if (args.kind == "scatter") {
    auto [chart, positions] = read_chart_csv(in);
    render_scatter_svg(chart, positions ? &*positions : nullptr, svg);
  } else if (args.kind == "curves") {
    QualityRows rows = read_quality_csv(in);
    render_curves_svg(rows, svg);
  } else {
    throw DomainError("plot kind must be 'scatter' or 'curves'");
  }
  flush_or_throw(svg, args.output);
  return kExitOk;
}

}  // namespace cli_detail

/// Run the command-line interface on `args` (without the program name).
/// All output goes to the supplied streams, which makes the CLI callable
/// in-process from tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"chanchart - charting massive MIMO channels by phase-insensitive distances"};
  app.require_subcommand(1);

  cli_detail::GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a synthetic multipath dataset with ground-truth positions");
  generate->add_option("--config", generate_args.config_path, "Scenario config file (key = value)");
  generate->add_option("--preset", generate_args.preset,
                       "Built-in scenario: quadriga-like or deepmimo-like");
  generate->add_option("--output", generate_args.output, "Output dataset path")->required();
  generate->add_option("--threads", generate_args.threads, "Thread cap (0 = all cores)");

  cli_detail::ChartArgs chart_args;
  CLI::App* chart = app.add_subcommand("chart", "Embed a dataset into chart coordinates");
  chart->add_option("dataset", chart_args.dataset, "Input dataset path")->required();
  chart->add_option("output", chart_args.output, "Output chart CSV path")->required();
  chart->add_option("--dim", chart_args.dim, "Chart dimension D' (default 2)");
  chart->add_option("--k", chart_args.k, "Neighbor count for the k-NN graph (default 30)");
  chart->add_option("--measure", chart_args.measure,
                    "Distance measure: phase-insensitive, normalized or euclidean");
  chart->add_option("--connectivity", chart_args.connectivity,
                    "Disconnected-graph policy: bridge or fail");
  chart->add_option("--dump-distances", chart_args.dump_distances,
                    "Also write the full distance matrix CSV here");
  chart->add_option("--threads", chart_args.threads, "Thread cap (0 = all cores)");

  cli_detail::EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score a chart against the dataset's ground-truth positions");
  evaluate->add_option("chart", evaluate_args.chart_csv, "Chart CSV path")->required();
  evaluate->add_option("dataset", evaluate_args.dataset, "Dataset path (must carry positions)")
      ->required();
  evaluate->add_option("--k-list", evaluate_args.k_list,
                       "Neighborhood sizes: comma list or start:step:end");
  evaluate->add_option("--output", evaluate_args.output, "Output CSV (K,CT,TW)")->required();
  evaluate->add_option("--threads", evaluate_args.threads, "Thread cap (0 = all cores)");

  cli_detail::PlotArgs plot_args;
  CLI::App* plot = app.add_subcommand("plot", "Render a chart or quality curves as SVG");
  plot->add_option("input", plot_args.input, "Input CSV path")->required();
  plot->add_option("--kind", plot_args.kind, "Plot kind: scatter or curves")->required();
  plot->add_option("--output", plot_args.output, "Output SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cli_detail::do_generate(generate_args, out);
    if (chart->parsed()) return cli_detail::do_chart(chart_args, out, err);
    if (evaluate->parsed()) return cli_detail::do_evaluate(evaluate_args, out);
    if (plot->parsed()) return cli_detail::do_plot(plot_args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace chanchart
