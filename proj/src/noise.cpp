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

#include "vecfilt/noise.hpp"

#include <bit>
#include <random>
#include <string>

#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

void check_probability(double p, std::string_view name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string(name) + " must be in [0,1], got " + std::to_string(p));
  }
}

// 53-bit uniform in [0,1); the standard bit trick, identical on every
// platform with IEEE doubles.
inline double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

inline std::uint8_t uniform_byte(std::mt19937_64& rng) {
  return std::uint8_t(rng() & 0xFF);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

void NoiseConfig::validate() const {
  check_probability(phi, "phi");
  check_probability(phi1, "phi1");
  check_probability(phi2, "phi2");
  check_probability(phi3, "phi3");
  if (phi1 + phi2 + phi3 > 1.0) {
    throw ConfigError("phi1+phi2+phi3 must not exceed 1, got " +
                      std::to_string(phi1 + phi2 + phi3));
  }
}

std::pair<Image, CorruptionMask> corrupt(const Image& img, const NoiseConfig& cfg) {
  cfg.validate();
  Image out = img;
  CorruptionMask mask{img.rows(), img.cols(),
                      std::vector<CorruptionLabel>(img.pixel_count(), CorruptionLabel::clean)};

  // Cumulative branch thresholds for a single uniform draw.
  const double c0 = 1.0 - cfg.phi;
  const double c1 = c0 + cfg.phi1 * cfg.phi;
  const double c2 = c1 + cfg.phi2 * cfg.phi;
  const double c3 = c2 + cfg.phi3 * cfg.phi;

  std::mt19937_64 rng(cfg.seed);
  auto pixels = out.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double u = uniform01(rng);
    if (u < c0) continue;
    if (u < c1) {
      pixels[i].k[0] = uniform_byte(rng);
      mask.labels[i] = CorruptionLabel::ch1;
    } else if (u < c2) {
      pixels[i].k[1] = uniform_byte(rng);
      mask.labels[i] = CorruptionLabel::ch2;
    } else if (u < c3) {
      pixels[i].k[2] = uniform_byte(rng);
      mask.labels[i] = CorruptionLabel::ch3;
    } else {
      pixels[i].k[0] = uniform_byte(rng);
      pixels[i].k[1] = uniform_byte(rng);
      pixels[i].k[2] = uniform_byte(rng);
      mask.labels[i] = CorruptionLabel::all;
    }
  }
  return {std::move(out), std::move(mask)};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t image_index, double level) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ (image_index + 1));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(level));
  return h;
}

Image mask_to_image(const CorruptionMask& mask) {
  static constexpr Rgb kColors[5] = {
      {{0, 0, 0}}, {{255, 0, 0}}, {{0, 255, 0}}, {{0, 0, 255}}, {{255, 255, 255}}};
  Image out(mask.rows, mask.cols);
  auto pixels = out.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = kColors[std::size_t(mask.labels[i])];
  }
  return out;
}

} // namespace vecfilt
