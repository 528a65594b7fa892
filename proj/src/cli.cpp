/*
 * Copyright 2026 The vecfilt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vecfilt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "vecfilt/bench.hpp"
#include "vecfilt/errors.hpp"
#include "vecfilt/filter.hpp"
#include "vecfilt/image_io.hpp"
#include "vecfilt/noise.hpp"
#include "vecfilt/quality.hpp"

namespace vecfilt {

namespace {

namespace fs = std::filesystem;

void check_window_side(int side) {
  if (side < 3 || side % 2 == 0) {
    throw ConfigError("--window must be an odd value >= 3, got " + std::to_string(side));
  }
}

std::vector<fs::path> collect_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("--corpus: '" + dir.string() + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& c : ext) c = char(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".ppm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw IoError("--corpus: no .png or .ppm files in '" + dir.string() + "'");
  }
  return files;
}

std::vector<FilterSpec> resolve_filters(const std::vector<std::string>& names, int side) {
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    return default_filter_set(side);
  }
  std::vector<FilterSpec> filters;
  filters.reserve(names.size());
  for (const auto& name : names) filters.push_back(parse_filter_spec(name, side));
  return filters;
}

struct NoiseArgs {
  double phi = 0.0, phi1 = 0.25, phi2 = 0.25, phi3 = 0.25;
  std::uint64_t seed = 0;
  std::string input, output, mask;
};

struct FilterArgs {
  std::string measure, input, output;
  int window = 3;
  int threads = 1;
};

struct MetricsArgs {
  std::string original, filtered;
  bool csv = false;
};

struct BenchArgs {
  std::string corpus_dir, out_dir;
  std::vector<double> levels = {0.10, 0.20, 0.30};
  std::vector<std::string> measures = {"all"};
  double phi1 = 0.25, phi2 = 0.25, phi3 = 0.25;
  std::uint64_t seed = 0;
  int reps = 10;
  int window = 3;
  int threads = 1;
};

void run_noise(const NoiseArgs& args) {
  NoiseConfig cfg{args.phi, args.phi1, args.phi2, args.phi3, args.seed};
  cfg.validate();
  const Image input = load_image(args.input);
  auto [noisy, mask] = corrupt(input, cfg);
  save_image(noisy, args.output);
  if (!args.mask.empty()) save_image(mask_to_image(mask), args.mask);
}

void run_filter(const FilterArgs& args) {
  check_window_side(args.window);
  const FilterSpec spec = parse_filter_spec(args.measure, args.window);
  const Image input = load_image(args.input);
  save_image(filter_image(input, spec, args.threads), args.output);
}

void run_metrics(const MetricsArgs& args) {
  const QualityReport q = compare(load_image(args.original), load_image(args.filtered));
  if (args.csv) {
    std::printf("mae,mse,ncd\n%.12g,%.12g,%.12g\n", q.mae, q.mse, q.ncd);
  } else {
    nlohmann::json out;
    out["mae"] = q.mae;
    out["mse"] = q.mse;
    out["ncd"] = q.ncd;
    std::cout << out.dump(2) << "\n";
  }
}

void run_bench(const BenchArgs& args) {
  check_window_side(args.window);
  BenchConfig cfg;
  cfg.corpus = collect_corpus(args.corpus_dir);
  cfg.levels = args.levels;
  cfg.filters = resolve_filters(args.measures, args.window);
  cfg.phi1 = args.phi1;
  cfg.phi2 = args.phi2;
  cfg.phi3 = args.phi3;
  cfg.base_seed = args.seed;
  cfg.timing_reps = args.reps;
  cfg.threads = args.threads;

  const BenchReport report = run_benchmark(cfg);
  write_report(report, args.out_dir);
  for (const auto& warning : report.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  std::cout << "benchmarked " << cfg.filters.size() << " filters on " << cfg.corpus.size()
            << " images; best overall: " << report.effectiveness.measures.front()
            << " (mean rank " << report.effectiveness.mean.front() << "); report in "
            << args.out_dir << "\n";
}

} // namespace

std::string measure_catalog_help() {
  std::string out = "Measures (defaults shown; parameters attach as id:key=value,...):\n";
  for (MeasureId id : kAllMeasures) {
    const MeasureSpec spec = make_measure_spec(id);
    char line[96];
    switch (id) {
    case MeasureId::fms:
    case MeasureId::fds:
      std::snprintf(line, sizeof line, "  %-12s (K=%g)\n", std::string(to_string(id)).c_str(),
                    spec.K);
      break;
    case MeasureId::fmds:
      std::snprintf(line, sizeof line, "  %-12s (K1=%g, K2=%g)\n",
                    std::string(to_string(id)).c_str(), spec.K1, spec.K2);
      break;
    case MeasureId::cfs:
      std::snprintf(line, sizeof line, "  %-12s (C=%g, t=%g)\n",
                    std::string(to_string(id)).c_str(), spec.C, spec.t);
      break;
    default:
      std::snprintf(line, sizeof line, "  %s\n", std::string(to_string(id)).c_str());
      break;
    }
    out += line;
  }
  out += "  ddf          (p=2)\n";
  out += "  none         (identity filter)\n";
  return out;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"vecfilt: vector filtering of color images corrupted by impulsive noise"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key-value config file; subcommand options live in [noise], [filter], "
                 "[metrics], [bench] sections. Command-line flags override the file.");
  app.footer(measure_catalog_help());

  NoiseArgs noise_args;
  auto* noise_cmd = app.add_subcommand("noise", "Corrupt an image with impulsive noise");
  noise_cmd->add_option("--phi", noise_args.phi, "Sample corruption probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  noise_cmd->add_option("--phi1", noise_args.phi1, "Red channel corruption probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  noise_cmd->add_option("--phi2", noise_args.phi2, "Green channel corruption probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  noise_cmd->add_option("--phi3", noise_args.phi3, "Blue channel corruption probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  noise_cmd->add_option("--seed", noise_args.seed, "PRNG seed")->capture_default_str();
  noise_cmd->add_option("--mask", noise_args.mask,
                        "Also write the corruption mask image (clean=black, ch1=red, "
                        "ch2=green, ch3=blue, all=white)");
  noise_cmd->add_option("input", noise_args.input, "Input image (.png/.ppm)")->required();
  noise_cmd->add_option("output", noise_args.output, "Output image (.png/.ppm)")->required();
  noise_cmd->footer(measure_catalog_help());
  noise_cmd->callback([&] { run_noise(noise_args); });

  FilterArgs filter_args;
  auto* filter_cmd = app.add_subcommand("filter", "Filter an image with one ordering criterion");
  filter_cmd->add_option("--measure", filter_args.measure,
                         "Ordering criterion (see the measure catalog below)")
      ->required();
  filter_cmd->add_option("--window", filter_args.window, "Window side length (odd, >= 3)")
      ->capture_default_str();
  filter_cmd->add_option("--threads", filter_args.threads, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  filter_cmd->add_option("input", filter_args.input, "Input image (.png/.ppm)")->required();
  filter_cmd->add_option("output", filter_args.output, "Output image (.png/.ppm)")->required();
  filter_cmd->footer(measure_catalog_help());
  filter_cmd->callback([&] { run_filter(filter_args); });

  MetricsArgs metrics_args;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "Compare two images: mae, mse, ncd (CIELAB)");
  auto* json_flag = metrics_cmd->add_flag("--json", "JSON output (default)");
  metrics_cmd->add_flag("--csv", metrics_args.csv, "CSV output")->excludes(json_flag);
  metrics_cmd->add_option("original", metrics_args.original, "Reference image")->required();
  metrics_cmd->add_option("filtered", metrics_args.filtered, "Image under test")->required();
  metrics_cmd->footer(measure_catalog_help());
  metrics_cmd->callback([&] { run_metrics(metrics_args); });

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Rank measures by effectiveness (mae/mse/ncd) and efficiency over a corpus");
  bench_cmd->add_option("--corpus", bench_args.corpus_dir, "Directory of .png/.ppm images")
      ->required();
  bench_cmd->add_option("--out", bench_args.out_dir, "Report output directory")->required();
  bench_cmd->add_option("--levels", bench_args.levels, "Noise levels (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd
      ->add_option("--measures", bench_args.measures,
                   "Measure list ('all' or space-separated specs)")
      ->capture_default_str();
  bench_cmd->add_option("--phi1", bench_args.phi1, "Red channel corruption probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--phi2", bench_args.phi2, "Green channel corruption probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--phi3", bench_args.phi3, "Blue channel corruption probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--seed", bench_args.seed, "Base seed for per-image noise")
      ->capture_default_str();
  bench_cmd->add_option("--reps", bench_args.reps, "Timing repetitions (0 skips timing)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--window", bench_args.window, "Window side length (odd, >= 3)")
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench_args.threads, "Workers for effectiveness runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->footer(measure_catalog_help());
  bench_cmd->callback([&] { run_bench(bench_args); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace vecfilt
