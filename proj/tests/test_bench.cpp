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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vecfilt/bench.hpp"
#include "vecfilt/errors.hpp"
#include "vecfilt/image_io.hpp"
#include "vecfilt/noise.hpp"
#include "vecfilt/quality.hpp"

using namespace vecfilt;
using doctest::Approx;

namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& leaf) {
  fs::path d = fs::temp_directory_path() / "vecfilt_bench_tests" / leaf;
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// A small corpus with structure plus texture, written once.
fs::path small_corpus() {
  static const fs::path dir = [] {
    fs::path d = temp_dir("corpus");
    std::mt19937_64 rng(81);
    for (int i = 0; i < 2; ++i) {
      Image img(24, 24);
      for (int r = 0; r < 24; ++r) {
        for (int c = 0; c < 24; ++c) {
          const int base = (r < 12) == (c < 12) ? 60 : 180;
          img.at(r, c) = Rgb{{std::uint8_t(base + int(rng() % 31)),
                              std::uint8_t(base / 2 + int(rng() % 31)),
                              std::uint8_t(255 - base + int(rng() % 31))}};
        }
      }
      save_image(img, d / ("img" + std::to_string(i) + ".ppm"));
    }
    return d;
  }();
  return dir;
}

BenchConfig small_config() {
  BenchConfig cfg;
  for (const auto& e : fs::directory_iterator(small_corpus())) cfg.corpus.push_back(e.path());
  std::sort(cfg.corpus.begin(), cfg.corpus.end());
  cfg.levels = {0.2};
  cfg.filters = {parse_filter_spec("none"), parse_filter_spec("d1"), parse_filter_spec("d2sq"),
                 parse_filter_spec("cfs")};
  cfg.base_seed = 3;
  cfg.timing_reps = 0;
  return cfg;
}

} // namespace

TEST_CASE("rank_measures implements the shared-minimum tie rule") {
  const std::vector<double> tied = {1.0, 2.0, 2.0};
  CHECK(rank_measures(tied, true) == std::vector<double>{0.0, 1.0, 1.0});
  const std::vector<double> increasing = {0.5, 1.5, 2.5, 9.0};
  CHECK(rank_measures(increasing, true) == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(rank_measures(increasing, false) == std::vector<double>{3.0, 2.0, 1.0, 0.0});
}

TEST_CASE("rank_measures matches a sort-based oracle on random values") {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> scores(10);
    for (auto& s : scores) s = double(rng() % 50); // duplicates guaranteed
    CHECK(rank_measures(scores, true) == oracle::sort_ranks(scores, true));
    CHECK(rank_measures(scores, false) == oracle::sort_ranks(scores, false));
  }
}

TEST_CASE("rank_measures excludes NaN with a warning") {
  std::vector<std::string> warnings;
  const std::vector<double> scores = {2.0, std::nan(""), 1.0};
  const auto ranks = rank_measures(scores, true, &warnings);
  CHECK(ranks[0] == 1.0);
  CHECK(std::isnan(ranks[1]));
  CHECK(ranks[2] == 0.0);
  REQUIRE(warnings.size() == 1);
}

TEST_CASE("rank columns sum to k(k-1)/2 when tie-free") {
  std::mt19937_64 rng(83);
  std::vector<double> scores(9);
  for (auto& s : scores) s = double(rng()) / 1e6; // distinct with probability ~1
  const auto ranks = rank_measures(scores, true);
  double sum = 0;
  for (double r : ranks) sum += r;
  CHECK(sum == 9.0 * 8.0 / 2.0);
}

TEST_CASE("time_measure validates reps and zeroes the identity filter") {
  const Image img(8, 8);
  CHECK(time_measure(img, parse_filter_spec("none"), 3) == 0.0);
  CHECK(time_measure(img, parse_filter_spec("d1"), 1) >= 0.0);
  CHECK_THROWS_AS(time_measure(img, parse_filter_spec("d1"), 0), ConfigError);
}

TEST_CASE("benchmark on a constant noiseless corpus gives the identity rank 0") {
  const fs::path dir = temp_dir("constant");
  Image img(16, 16);
  for (auto& px : img.pixels()) px = Rgb{{80, 90, 100}};
  save_image(img, dir / "flat.ppm");

  BenchConfig cfg;
  cfg.corpus = {dir / "flat.ppm"};
  cfg.levels = {0.0};
  cfg.filters = {parse_filter_spec("none"), parse_filter_spec("d1"), parse_filter_spec("cfs")};
  cfg.timing_reps = 0;
  const BenchReport report = run_benchmark(cfg);

  // Everything reproduces the constant image exactly, so every rank ties at 0.
  for (std::size_t m = 0; m < report.effectiveness.measures.size(); ++m) {
    for (double cell : report.effectiveness.cells[m]) CHECK(cell == 0.0);
  }
}

TEST_CASE("identity filter ranks worst on mse under noise") {
  const BenchConfig cfg = small_config();
  const BenchReport report = run_benchmark(cfg);
  const std::size_t k = cfg.filters.size();
  for (std::size_t m = 0; m < k; ++m) {
    if (report.effectiveness.measures[m] != "none") continue;
    for (std::size_t col = 0; col < report.effectiveness.columns.size(); ++col) {
      if (report.effectiveness.columns[col].rfind("mse", 0) == 0) {
        CHECK(report.effectiveness.cells[m][col] == double(k - 1));
      }
    }
  }
}

TEST_CASE("benchmark reports are deterministic and regenerable") {
  const BenchConfig cfg = small_config();
  const BenchReport a = run_benchmark(cfg);
  const BenchReport b = run_benchmark(cfg);

  REQUIRE(a.raw.size() == b.raw.size());
  for (std::size_t i = 0; i < a.raw.size(); ++i) {
    CHECK(a.raw[i].mae == b.raw[i].mae);
    CHECK(a.raw[i].mse == b.raw[i].mse);
    CHECK(a.raw[i].ncd == b.raw[i].ncd);
  }
  CHECK(a.effectiveness.measures == b.effectiveness.measures);
  CHECK(a.effectiveness.cells == b.effectiveness.cells);

  // Rebuilding the table from the stored raw results loses nothing.
  const RankTable regenerated = effectiveness_table(cfg, a.raw);
  CHECK(regenerated.measures == a.effectiveness.measures);
  CHECK(regenerated.cells == a.effectiveness.cells);
  CHECK(regenerated.mean == a.effectiveness.mean);

  // And the written artifacts are byte-identical run to run.
  const fs::path out_a = temp_dir("report_a");
  const fs::path out_b = temp_dir("report_b");
  write_report(a, out_a);
  write_report(b, out_b);
  for (const char* name : {"effectiveness.csv", "raw_results.csv", "report.md"}) {
    CHECK(slurp(out_a / name) == slurp(out_b / name));
    CHECK(!slurp(out_a / name).empty());
  }
}

TEST_CASE("effectiveness table lists exactly the configured measures") {
  const BenchConfig cfg = small_config();
  const BenchReport report = run_benchmark(cfg);
  std::vector<std::string> expected, got = report.effectiveness.measures;
  for (const auto& f : cfg.filters) expected.push_back(f.label());
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
  CHECK(report.effectiveness.columns.size() == 3); // one level, three criteria
  // The overall mean is the arithmetic mean of the row cells.
  for (std::size_t m = 0; m < got.size(); ++m) {
    double sum = 0;
    for (double cell : report.effectiveness.cells[m]) sum += cell;
    CHECK(report.effectiveness.mean[m] ==
          Approx(sum / double(report.effectiveness.columns.size())).epsilon(1e-15));
  }
}

TEST_CASE("timing tables appear when reps are requested") {
  BenchConfig cfg = small_config();
  cfg.timing_reps = 1;
  const BenchReport report = run_benchmark(cfg);
  REQUIRE(report.efficiency.has_value());
  CHECK(report.efficiency->measures.size() == cfg.filters.size());
  REQUIRE(!report.times.empty());
  // The identity filter is instantaneous by definition and ranks first.
  CHECK(report.efficiency->measures.front() == "none");
  CHECK(report.times.front().measure == "none");
  CHECK(report.times.front().mean_ms == 0.0);
  const fs::path out = temp_dir("report_timed");
  write_report(report, out);
  CHECK(fs::exists(out / "efficiency.csv"));
  CHECK(fs::exists(out / "times.csv"));
}

TEST_CASE("unreadable corpus entries are skipped with warnings") {
  BenchConfig cfg = small_config();
  cfg.corpus.push_back(small_corpus() / "missing.ppm");
  const BenchReport report = run_benchmark(cfg);
  REQUIRE(!report.warnings.empty());
  CHECK(report.warnings.front().find("missing.ppm") != std::string::npos);

  BenchConfig empty = cfg;
  empty.corpus = {small_corpus() / "missing.ppm"};
  CHECK_THROWS_AS(run_benchmark(empty), IoError);
}

TEST_CASE("config validation rejects nonsense") {
  BenchConfig cfg = small_config();
  cfg.filters.push_back(parse_filter_spec("d1"));
  CHECK_THROWS_AS(run_benchmark(cfg), ConfigError); // duplicate label
  cfg = small_config();
  cfg.levels = {1.5};
  CHECK_THROWS_AS(run_benchmark(cfg), ConfigError);
  cfg = small_config();
  cfg.filters.clear();
  CHECK_THROWS_AS(run_benchmark(cfg), ConfigError);
}

TEST_CASE("report files quote labels containing commas") {
  const fs::path dir = temp_dir("quoting");
  BenchConfig cfg = small_config();
  cfg.filters = {parse_filter_spec("none"), parse_filter_spec("cfs:C=99,t=4")};
  const BenchReport report = run_benchmark(cfg);
  write_report(report, dir);
  const std::string csv = slurp(dir / "effectiveness.csv");
  CHECK(csv.find("\"cfs:C=99,t=4\"") != std::string::npos);
}

TEST_CASE("filtering a noisy natural image improves mae substantially") {
  const fs::path data_dir = VECFILT_TEST_DATA_DIR;
  const Image full = load_image(data_dir / "astronaut.ppm");
  // 128x128 crop keeps this test quick.
  Image img(128, 128);
  for (int r = 0; r < 128; ++r) {
    for (int c = 0; c < 128; ++c) img.at(r, c) = full.at(r + 40, c + 40);
  }
  const auto [noisy, mask] = corrupt(img, NoiseConfig{0.10, 0.25, 0.25, 0.25, 7});
  const double mae_noisy = mae(img, noisy);
  const double mse_noisy = mse(img, noisy);
  const Image filtered = filter_image(noisy, parse_filter_spec("d1"));
  // Detail-rich crops keep a higher MAE floor than smooth ones; the noise
  // suppression (MSE) is where the order-of-magnitude drop shows.
  CHECK(mae_noisy > 2.0);
  CHECK(mae(img, filtered) < 0.85 * mae_noisy);
  CHECK(mse(img, filtered) < 0.2 * mse_noisy);
}
