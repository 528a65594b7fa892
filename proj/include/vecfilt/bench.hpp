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

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vecfilt/filter.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

/// Corpus benchmark configuration. Noise seeds are derived per (image,
/// level) from `base_seed`, so runs are reproducible and extending the
/// corpus does not perturb existing images' noise.
struct BenchConfig {
  std::vector<std::filesystem::path> corpus;
  std::vector<double> levels = {0.10, 0.20, 0.30};
  std::vector<FilterSpec> filters; ///< typically default_filter_set()
  double phi1 = 0.25, phi2 = 0.25, phi3 = 0.25;
  std::uint64_t base_seed = 0;
  int timing_reps = 10; ///< timed runs per (image, level, filter); 0 skips timing
  int threads = 1;      ///< worker cap for the effectiveness filter runs
};

/// Quality criteria of one (image, noise level, filter) run, measured
/// against the clean original.
struct ImageResult {
  std::string image;
  double level = 0.0;
  std::string measure;
  double mae = 0.0;
  double mse = 0.0;
  double ncd = 0.0;
};

/// Average ranks per measure. Each cell is the mean over the corpus of the
/// per-image rank (0 = best; ties share the lowest rank); `mean` is the
/// arithmetic mean of the row's cells. Rows are sorted by `mean`.
struct RankTable {
  std::vector<std::string> columns; ///< e.g. "mae@0.10", ..., excluding "mean"
  std::vector<std::string> measures;
  std::vector<std::vector<double>> cells; ///< [row][column]
  std::vector<double> mean;
};

/// Wall-time summary of one filter over all timed runs.
struct TimingRow {
  std::string measure;
  double mean_ms = 0.0;
  double lut_build_ms = 0.0;
  long relative = 0; ///< round(mean / fastest non-identity mean)
};

struct BenchReport {
  BenchConfig config;
  std::vector<ImageResult> raw;
  RankTable effectiveness;
  std::optional<RankTable> efficiency; ///< present when timing ran
  std::vector<TimingRow> times;        ///< empty when timing skipped
  std::vector<std::string> warnings;
};

/// Ranks one score vector: rank(m) = number of strictly better scores, so
/// ties share the lowest rank and ranks start at 0. NaN scores are excluded
/// (their rank is NaN) with a warning appended to `warnings`.
std::vector<double> rank_measures(std::span<const double> scores, bool lower_is_better,
                                  std::vector<std::string>* warnings = nullptr);

/// Mean wall time in milliseconds of `reps` single-threaded filter runs,
/// after one untimed warm-up. Table construction happens before the clock
/// starts. The identity filter reports 0 by definition.
double time_measure(const Image& img, const FilterSpec& spec, int reps);

/// Rebuilds the effectiveness table from stored per-image results; this is
/// exactly how run_benchmark builds it, so regeneration is lossless.
RankTable effectiveness_table(const BenchConfig& cfg, std::span<const ImageResult> raw,
                              std::vector<std::string>* warnings = nullptr);

/// Runs the whole benchmark: corrupt, filter, score, rank, time. Unreadable
/// corpus entries are skipped with a warning; an entirely empty run is an
/// error. Deterministic given the config (timing values aside).
BenchReport run_benchmark(const BenchConfig& cfg);

/// Writes effectiveness.csv, raw_results.csv, report.md, and (when timing
/// ran) efficiency.csv and times.csv into `out_dir`, all atomically.
void write_report(const BenchReport& report, const std::filesystem::path& out_dir);

} // namespace vecfilt
