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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"
#include "vecfilt/image_io.hpp"
#include "vecfilt/measures.hpp"

using namespace vecfilt;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output; // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(VECFILT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
  const int status = pclose(pipe);
  return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(output)};
}

fs::path temp_dir(const std::string& leaf) {
  fs::path d = fs::temp_directory_path() / "vecfilt_cli_tests" / leaf;
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// A small natural crop shared by the pipeline tests.
fs::path crop_image() {
  static const fs::path p = [] {
    const fs::path out = temp_dir("input") / "crop.ppm";
    const Image full = load_image(fs::path(VECFILT_TEST_DATA_DIR) / "coffee.ppm");
    Image img(96, 96);
    for (int r = 0; r < 96; ++r) {
      for (int c = 0; c < 96; ++c) img.at(r, c) = full.at(r + 60, c + 60);
    }
    save_image(img, out);
    return out;
  }();
  return p;
}

double json_field(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(text.find(':', pos) + 1));
}

} // namespace

TEST_CASE("help lists every measure id with defaults on every subcommand") {
  for (const char* sub : {"", "noise", "filter", "metrics", "bench"}) {
    const CliResult r = run_cli(std::string(sub) + " --help");
    CHECK(r.exit_code == 0);
    for (MeasureId id : kAllMeasures) {
      CAPTURE(sub);
      CHECK(r.output.find(std::string(to_string(id))) != std::string::npos);
    }
    CHECK(r.output.find("K=1024") != std::string::npos);
    CHECK(r.output.find("K1=1024, K2=4") != std::string::npos);
    CHECK(r.output.find("C=150, t=4") != std::string::npos);
    CHECK(r.output.find("ddf") != std::string::npos);
    CHECK(r.output.find("none") != std::string::npos);
  }
}

TEST_CASE("metrics on identical files reports zeros") {
  const CliResult r =
      run_cli("metrics " + crop_image().string() + " " + crop_image().string());
  CHECK(r.exit_code == 0);
  CHECK(json_field(r.output, "mae") == 0.0);
  CHECK(json_field(r.output, "mse") == 0.0);
  CHECK(json_field(r.output, "ncd") == 0.0);

  const CliResult csv =
      run_cli("metrics --csv " + crop_image().string() + " " + crop_image().string());
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.find("mae,mse,ncd") != std::string::npos);
  CHECK(csv.output.find("0,0,0") != std::string::npos);
}

TEST_CASE("the noise -> filter -> metrics pipeline improves mae") {
  const fs::path dir = temp_dir("pipeline");
  const std::string in = crop_image().string();
  const std::string noisy = (dir / "noisy.ppm").string();
  const std::string filtered = (dir / "filtered.ppm").string();

  CHECK(run_cli("noise --phi 0.10 --seed 42 " + in + " " + noisy).exit_code == 0);
  CHECK(run_cli("filter --measure d1 " + noisy + " " + filtered).exit_code == 0);

  const double mae_noisy = json_field(run_cli("metrics " + in + " " + noisy).output, "mae");
  const double mae_filtered =
      json_field(run_cli("metrics " + in + " " + filtered).output, "mae");
  CHECK(mae_noisy > 1.0);
  CHECK(mae_filtered < mae_noisy);
}

TEST_CASE("identical argv produces byte-identical outputs") {
  const fs::path dir = temp_dir("determinism");
  const std::string in = crop_image().string();
  const std::string out_a = (dir / "a.ppm").string();
  const std::string out_b = (dir / "b.ppm").string();
  CHECK(run_cli("noise --phi 0.25 --seed 9 " + in + " " + out_a).exit_code == 0);
  CHECK(run_cli("noise --phi 0.25 --seed 9 " + in + " " + out_b).exit_code == 0);
  CHECK(slurp(out_a) == slurp(out_b));

  const std::string f_a = (dir / "fa.png").string();
  const std::string f_b = (dir / "fb.png").string();
  CHECK(run_cli("filter --measure cfs --threads 1 " + out_a + " " + f_a).exit_code == 0);
  CHECK(run_cli("filter --measure cfs --threads 4 " + out_b + " " + f_b).exit_code == 0);
  CHECK(slurp(f_a) == slurp(f_b));
}

TEST_CASE("usage and config errors exit with code 3") {
  const fs::path dir = temp_dir("errors");
  const std::string in = crop_image().string();
  const std::string out = (dir / "out.ppm").string();

  const CliResult unknown = run_cli("filter --measure euclid " + in + " " + out);
  CHECK(unknown.exit_code == 3);
  CHECK(unknown.output.find("euclid") != std::string::npos);

  const CliResult range = run_cli("noise --phi 1.5 " + in + " " + out);
  CHECK(range.exit_code == 3);
  CHECK(range.output.find("--phi") != std::string::npos);

  CHECK(run_cli("filter --measure fms:K=0 " + in + " " + out).exit_code == 3);
  CHECK(run_cli("filter --measure d1 --window 4 " + in + " " + out).exit_code == 3);
  CHECK(run_cli("noise --phi 0.2 --phi1 0.5 --phi2 0.5 --phi3 0.5 " + in + " " + out)
            .exit_code == 3);
  CHECK(run_cli("filter --measure d1 --bogus-flag " + in + " " + out).exit_code == 3);
  CHECK(run_cli("").exit_code == 3); // a subcommand is required
}

TEST_CASE("i/o errors exit with code 2") {
  const fs::path dir = temp_dir("io_errors");
  const std::string out = (dir / "out.ppm").string();
  CHECK(run_cli("filter --measure d1 /nonexistent/in.ppm " + out).exit_code == 2);
  CHECK(run_cli("metrics /nonexistent/a.ppm /nonexistent/b.ppm").exit_code == 2);
  const std::string in = crop_image().string();
  CHECK(run_cli("filter --measure d1 " + in + " " + (dir / "out.bmp").string()).exit_code == 2);
}

TEST_CASE("config files supply defaults that flags override") {
  const fs::path dir = temp_dir("config");
  const std::string in = crop_image().string();
  const fs::path cfg = dir / "noise.conf";
  {
    std::ofstream f(cfg);
    f << "[noise]\nphi=0.5\nseed=11\n";
  }
  const std::string from_cfg = (dir / "from_cfg.ppm").string();
  CHECK(run_cli("--config " + cfg.string() + " noise " + in + " " + from_cfg).exit_code == 0);
  CHECK(!(load_image(from_cfg) == load_image(in)));

  // A command-line phi of zero overrides the file and leaves pixels alone.
  const std::string overridden = (dir / "overridden.ppm").string();
  CHECK(run_cli("--config " + cfg.string() + " noise --phi 0 " + in + " " + overridden)
            .exit_code == 0);
  CHECK(load_image(overridden) == load_image(in));
}

TEST_CASE("noise writes the optional corruption mask") {
  const fs::path dir = temp_dir("mask");
  const std::string in = crop_image().string();
  const std::string out = (dir / "noisy.ppm").string();
  const std::string mask = (dir / "mask.png").string();
  CHECK(run_cli("noise --phi 1.0 --phi1 0 --phi2 0 --phi3 0 --seed 3 " + in + " " + out +
                " --mask " + mask)
            .exit_code == 0);
  const Image m = load_image(mask);
  for (const Rgb& px : m.pixels()) CHECK(px == Rgb{{255, 255, 255}});
}

TEST_CASE("bench subcommand writes the report files deterministically") {
  const fs::path corpus = temp_dir("bench_corpus");
  std::mt19937_64 rng(91);
  for (int i = 0; i < 2; ++i) {
    save_image(oracle::random_image(rng, 20, 20), corpus / ("img" + std::to_string(i) + ".ppm"));
  }
  const fs::path out_a = temp_dir("bench_out_a");
  const fs::path out_b = temp_dir("bench_out_b");
  const std::string common = "bench --corpus " + corpus.string() +
                             " --levels 0.1,0.3 --measures none d1 cfs --seed 5 --reps 0 --out ";
  const CliResult a = run_cli(common + out_a.string());
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("report in") != std::string::npos);
  CHECK(run_cli(common + out_b.string()).exit_code == 0);

  for (const char* name : {"effectiveness.csv", "raw_results.csv", "report.md"}) {
    CAPTURE(name);
    CHECK(!slurp(out_a / name).empty());
    CHECK(slurp(out_a / name) == slurp(out_b / name));
  }
  const std::string md = slurp(out_a / "report.md");
  CHECK(md.find("mt19937_64") != std::string::npos); // config echo names the generator
  CHECK(md.find("base seed: 5") != std::string::npos);
}

TEST_CASE("bench rejects an empty corpus directory with exit 2") {
  const fs::path empty = temp_dir("bench_empty");
  const fs::path out = temp_dir("bench_empty_out");
  CHECK(run_cli("bench --corpus " + empty.string() + " --out " + out.string()).exit_code == 2);
}
