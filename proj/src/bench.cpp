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

#include "vecfilt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "vecfilt/errors.hpp"
#include "vecfilt/image_io.hpp"
#include "vecfilt/noise.hpp"
#include "vecfilt/quality.hpp"

namespace vecfilt {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string level_label(double level) { return fmt("%.2f", level); }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void validate_config(const BenchConfig& cfg) {
  if (cfg.corpus.empty()) throw ConfigError("benchmark corpus is empty");
  if (cfg.filters.empty()) throw ConfigError("benchmark measure list is empty");
  if (cfg.levels.empty()) throw ConfigError("benchmark noise level list is empty");
  if (cfg.timing_reps < 0) throw ConfigError("timing repetitions must be >= 0");
  std::vector<std::string> labels;
  for (const auto& f : cfg.filters) labels.push_back(f.label());
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw ConfigError("duplicate measure labels in benchmark configuration");
  }
  for (double level : cfg.levels) {
    NoiseConfig nc;
    nc.phi = level;
    nc.phi1 = cfg.phi1;
    nc.phi2 = cfg.phi2;
    nc.phi3 = cfg.phi3;
    nc.validate();
  }
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// One timed cell: table construction measured separately, one untimed
// warm-up, then `reps` single-threaded runs.
struct TimedCell {
  double mean_ms;
  double lut_build_ms;
};

TimedCell time_filter(const Image& img, const FilterSpec& spec, int reps) {
  if (spec.kind == FilterKind::identity) return {0.0, 0.0};
  const auto t0 = Clock::now();
  const PreparedFilter prepared(spec);
  const double build_ms = elapsed_ms(t0);

  Image sink = prepared.run(img, 1); // warm-up
  const auto t1 = Clock::now();
  for (int rep = 0; rep < reps; ++rep) {
    sink = prepared.run(img, 1);
  }
  return {elapsed_ms(t1) / double(reps), build_ms};
}

} // namespace

std::vector<double> rank_measures(std::span<const double> scores, bool lower_is_better,
                                  std::vector<std::string>* warnings) {
  std::vector<double> ranks(scores.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) {
      if (warnings) {
        warnings->push_back("NaN score at position " + std::to_string(i) +
                            " excluded from ranking");
      }
      continue;
    }
    int better = 0;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (std::isnan(scores[j])) continue;
      if (lower_is_better ? scores[j] < scores[i] : scores[j] > scores[i]) ++better;
    }
    ranks[i] = double(better);
  }
  return ranks;
}

double time_measure(const Image& img, const FilterSpec& spec, int reps) {
  if (reps < 1) throw ConfigError("timing repetitions must be >= 1");
  return time_filter(img, spec, reps).mean_ms;
}

RankTable effectiveness_table(const BenchConfig& cfg, std::span<const ImageResult> raw,
                              std::vector<std::string>* warnings) {
  const std::size_t k = cfg.filters.size();
  std::vector<std::string> labels(k);
  for (std::size_t m = 0; m < k; ++m) labels[m] = cfg.filters[m].label();

  // Indexed lookup of the raw results: (image, level, measure) -> criteria.
  std::map<std::string, std::size_t> label_index;
  for (std::size_t m = 0; m < k; ++m) label_index[labels[m]] = m;
  struct Cell {
    double v[3] = {std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN()};
  };
  // image -> level label -> per-measure criteria
  std::map<std::string, std::map<std::string, std::vector<Cell>>> by_image;
  for (const auto& r : raw) {
    auto it = label_index.find(r.measure);
    if (it == label_index.end()) {
      throw ConfigError("raw result references unconfigured measure '" + r.measure + "'");
    }
    auto& per_level = by_image[r.image][level_label(r.level)];
    if (per_level.empty()) per_level.resize(k);
    per_level[it->second] = Cell{{r.mae, r.mse, r.ncd}};
  }

  static constexpr const char* kCriteria[3] = {"mae", "mse", "ncd"};
  RankTable table;
  for (const char* crit : kCriteria) {
    for (double level : cfg.levels) {
      table.columns.push_back(std::string(crit) + "@" + level_label(level));
    }
  }
  const std::size_t ncols = table.columns.size();
  std::vector<std::vector<double>> sums(k, std::vector<double>(ncols, 0.0));
  std::vector<std::vector<long>> counts(k, std::vector<long>(ncols, 0));

  for (const auto& [image, per_level] : by_image) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
        const auto it = per_level.find(level_label(cfg.levels[l]));
        if (it == per_level.end()) continue;
        std::vector<double> scores(k);
        for (std::size_t m = 0; m < k; ++m) scores[m] = it->second[m].v[c];
        const auto ranks = rank_measures(scores, /*lower_is_better=*/true, warnings);
        const std::size_t col = c * cfg.levels.size() + l;
        for (std::size_t m = 0; m < k; ++m) {
          if (std::isnan(ranks[m])) continue;
          sums[m][col] += ranks[m];
          counts[m][col] += 1;
        }
      }
    }
  }

  std::vector<std::size_t> order(k);
  std::vector<double> means(k);
  std::vector<std::vector<double>> cells(k, std::vector<double>(ncols));
  for (std::size_t m = 0; m < k; ++m) {
    double total = 0.0;
    for (std::size_t col = 0; col < ncols; ++col) {
      cells[m][col] = counts[m][col] > 0 ? sums[m][col] / double(counts[m][col])
                                         : std::numeric_limits<double>::quiet_NaN();
      total += cells[m][col];
    }
    means[m] = total / double(ncols);
    order[m] = m;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (means[a] != means[b]) return means[a] < means[b];
    return labels[a] < labels[b];
  });
  for (std::size_t m : order) {
    table.measures.push_back(labels[m]);
    table.cells.push_back(std::move(cells[m]));
    table.mean.push_back(means[m]);
  }
  return table;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
  validate_config(cfg);
  BenchReport report;
  report.config = cfg;

  const std::size_t k = cfg.filters.size();
  std::vector<std::string> labels(k);
  std::vector<PreparedFilter> prepared;
  prepared.reserve(k);
  for (std::size_t m = 0; m < k; ++m) {
    labels[m] = cfg.filters[m].label();
    prepared.emplace_back(cfg.filters[m]);
  }

  // Timing accumulators: per (level, measure) rank sums and global means.
  const std::size_t nlevels = cfg.levels.size();
  std::vector<std::vector<double>> time_rank_sums(k, std::vector<double>(nlevels, 0.0));
  std::vector<long> timed_images_per_level(nlevels, 0);
  std::vector<double> time_sums(k, 0.0), build_sums(k, 0.0);
  long timed_cells = 0;

  for (std::size_t idx = 0; idx < cfg.corpus.size(); ++idx) {
    const auto& path = cfg.corpus[idx];
    Image original;
    try {
      original = load_image(path);
    } catch (const std::exception& e) {
      report.warnings.push_back("skipping " + path.string() + ": " + e.what());
      continue;
    }
    const std::string image_name = path.filename().string();

    try {
      std::vector<ImageResult> rows;
      for (std::size_t l = 0; l < nlevels; ++l) {
        NoiseConfig nc;
        nc.phi = cfg.levels[l];
        nc.phi1 = cfg.phi1;
        nc.phi2 = cfg.phi2;
        nc.phi3 = cfg.phi3;
        nc.seed = derive_seed(cfg.base_seed, idx, cfg.levels[l]);
        const auto [noisy, mask] = corrupt(original, nc);

        for (std::size_t m = 0; m < k; ++m) {
          const Image filtered = prepared[m].run(noisy, cfg.threads);
          const QualityReport q = compare(original, filtered);
          rows.push_back({image_name, cfg.levels[l], labels[m], q.mae, q.mse, q.ncd});
        }

        if (cfg.timing_reps > 0) {
          std::vector<double> times(k);
          for (std::size_t m = 0; m < k; ++m) {
            const TimedCell cell = time_filter(noisy, cfg.filters[m], cfg.timing_reps);
            times[m] = cell.mean_ms;
            time_sums[m] += cell.mean_ms;
            build_sums[m] += cell.lut_build_ms;
          }
          const auto ranks = rank_measures(times, /*lower_is_better=*/true, &report.warnings);
          for (std::size_t m = 0; m < k; ++m) time_rank_sums[m][l] += ranks[m];
          timed_images_per_level[l] += 1;
          ++timed_cells;
        }
      }
      report.raw.insert(report.raw.end(), rows.begin(), rows.end());
    } catch (const std::exception& e) {
      report.warnings.push_back("skipping " + path.string() + ": " + e.what());
    }
  }

  if (report.raw.empty()) {
    throw IoError("benchmark produced no results; every corpus image failed");
  }

  report.effectiveness = effectiveness_table(cfg, report.raw, &report.warnings);

  if (cfg.timing_reps > 0 && timed_cells > 0) {
    RankTable eff;
    for (double level : cfg.levels) eff.columns.push_back("time@" + level_label(level));
    std::vector<double> means(k);
    std::vector<std::vector<double>> cells(k, std::vector<double>(nlevels));
    for (std::size_t m = 0; m < k; ++m) {
      double total = 0.0;
      for (std::size_t l = 0; l < nlevels; ++l) {
        cells[m][l] = timed_images_per_level[l] > 0
                          ? time_rank_sums[m][l] / double(timed_images_per_level[l])
                          : std::numeric_limits<double>::quiet_NaN();
        total += cells[m][l];
      }
      means[m] = total / double(nlevels);
    }
    std::vector<std::size_t> order(k);
    for (std::size_t m = 0; m < k; ++m) order[m] = m;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (means[a] != means[b]) return means[a] < means[b];
      return labels[a] < labels[b];
    });
    for (std::size_t m : order) {
      eff.measures.push_back(labels[m]);
      eff.cells.push_back(std::move(cells[m]));
      eff.mean.push_back(means[m]);
    }
    report.efficiency = std::move(eff);

    // Mean wall times over every timed (image, level), fastest-relative
    // units against the best non-identity filter.
    double fastest = std::numeric_limits<double>::infinity();
    std::vector<double> mean_ms(k), mean_build(k);
    for (std::size_t m = 0; m < k; ++m) {
      mean_ms[m] = time_sums[m] / double(timed_cells);
      mean_build[m] = build_sums[m] / double(timed_cells);
      if (cfg.filters[m].kind != FilterKind::identity && mean_ms[m] > 0.0) {
        fastest = std::min(fastest, mean_ms[m]);
      }
    }
    std::vector<std::size_t> torder(k);
    for (std::size_t m = 0; m < k; ++m) torder[m] = m;
    std::stable_sort(torder.begin(), torder.end(), [&](std::size_t a, std::size_t b) {
      if (mean_ms[a] != mean_ms[b]) return mean_ms[a] < mean_ms[b];
      return labels[a] < labels[b];
    });
    for (std::size_t m : torder) {
      TimingRow row;
      row.measure = labels[m];
      row.mean_ms = mean_ms[m];
      row.lut_build_ms = mean_build[m];
      row.relative = std::isfinite(fastest) ? std::lround(mean_ms[m] / fastest) : 0;
      report.times.push_back(std::move(row));
    }
  }
  return report;
}

namespace {

std::string render_rank_csv(const RankTable& table) {
  std::ostringstream out;
  out << "measure";
  for (const auto& col : table.columns) out << "," << csv_escape(col);
  out << ",mean\n";
  for (std::size_t m = 0; m < table.measures.size(); ++m) {
    out << csv_escape(table.measures[m]);
    for (double cell : table.cells[m]) out << "," << fmt("%.4f", cell);
    out << "," << fmt("%.4f", table.mean[m]) << "\n";
  }
  return std::move(out).str();
}

std::string render_rank_markdown(const RankTable& table) {
  std::ostringstream out;
  out << "| measure |";
  for (const auto& col : table.columns) out << " " << col << " |";
  out << " mean |\n|---|";
  for (std::size_t i = 0; i <= table.columns.size(); ++i) out << "---|";
  out << "\n";
  for (std::size_t m = 0; m < table.measures.size(); ++m) {
    out << "| " << table.measures[m] << " |";
    for (double cell : table.cells[m]) out << " " << fmt("%.2f", cell) << " |";
    out << " " << fmt("%.2f", table.mean[m]) << " |\n";
  }
  return std::move(out).str();
}

} // namespace

void write_report(const BenchReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  atomic_write_file(out_dir / "effectiveness.csv", render_rank_csv(report.effectiveness));

  {
    std::ostringstream raw;
    raw << "image,level,measure,mae,mse,ncd\n";
    for (const auto& r : report.raw) {
      raw << csv_escape(r.image) << "," << level_label(r.level) << "," << csv_escape(r.measure)
          << "," << fmt("%.12g", r.mae) << "," << fmt("%.12g", r.mse) << ","
          << fmt("%.12g", r.ncd) << "\n";
    }
    atomic_write_file(out_dir / "raw_results.csv", std::move(raw).str());
  }

  if (report.efficiency) {
    atomic_write_file(out_dir / "efficiency.csv", render_rank_csv(*report.efficiency));
  }
  if (!report.times.empty()) {
    std::ostringstream times;
    times << "measure,mean_ms,lut_build_ms,relative\n";
    for (const auto& row : report.times) {
      times << csv_escape(row.measure) << "," << fmt("%.4f", row.mean_ms) << ","
            << fmt("%.4f", row.lut_build_ms) << "," << row.relative << "\n";
    }
    atomic_write_file(out_dir / "times.csv", std::move(times).str());
  }

  std::ostringstream md;
  md << "# Vector filter benchmark report\n\n";
  md << "## Configuration\n\n";
  md << "- corpus (" << report.config.corpus.size() << " images):";
  for (const auto& p : report.config.corpus) md << " " << p.filename().string();
  md << "\n- noise levels:";
  for (double level : report.config.levels) md << " " << level_label(level);
  md << "\n- channel corruption probabilities: " << fmt("%g", report.config.phi1) << " "
     << fmt("%g", report.config.phi2) << " " << fmt("%g", report.config.phi3);
  md << "\n- base seed: " << report.config.base_seed << " (prng: " << kNoisePrngId << ")";
  md << "\n- filters:";
  for (const auto& f : report.config.filters) md << " " << f.label();
  md << "\n- window side: "
     << (report.config.filters.empty() ? 3 : report.config.filters.front().window_side);
  md << "\n- timing repetitions: " << report.config.timing_reps
     << " (single-threaded, warm cache, tables built before the clock)";
  md << "\n- effectiveness worker threads: " << report.config.threads;
  md << "\n- color space for ncd: CIELAB, sRGB primaries, D65 white point\n\n";

  md << "## Effectiveness ranks (0 = best, mean over corpus)\n\n";
  md << render_rank_markdown(report.effectiveness) << "\n";

  if (report.efficiency) {
    md << "## Efficiency ranks (0 = fastest, mean over corpus)\n\n";
    md << render_rank_markdown(*report.efficiency) << "\n";
  }
  if (!report.times.empty()) {
    md << "## Wall times\n\n";
    md << "| measure | mean ms | table build ms | relative |\n|---|---|---|---|\n";
    for (const auto& row : report.times) {
      md << "| " << row.measure << " | " << fmt("%.3f", row.mean_ms) << " | "
         << fmt("%.3f", row.lut_build_ms) << " | " << row.relative << "t |\n";
    }
    md << "\n";
  }
  if (!report.warnings.empty()) {
    md << "## Warnings\n\n";
    for (const auto& w : report.warnings) md << "- " << w << "\n";
  }
  atomic_write_file(out_dir / "report.md", std::move(md).str());
}

} // namespace vecfilt
