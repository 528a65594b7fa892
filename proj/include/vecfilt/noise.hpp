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

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "vecfilt/image.hpp"

namespace vecfilt {

/// Correlated impulsive noise. Each pixel is independently left clean with
/// probability 1-phi; otherwise exactly one corruption branch applies:
/// channel k alone with probability phi_k*phi, or all three channels with
/// probability (1-(phi1+phi2+phi3))*phi. Corrupted channels are replaced by
/// independent uniform draws from {0,...,255}.
struct NoiseConfig {
  double phi = 0.0;
  double phi1 = 0.25;
  double phi2 = 0.25;
  double phi3 = 0.25;
  std::uint64_t seed = 0;

  /// Throws ConfigError if any probability is outside [0,1] or the channel
  /// probabilities sum past 1.
  void validate() const;
};

enum class CorruptionLabel : std::uint8_t { clean = 0, ch1 = 1, ch2 = 2, ch3 = 3, all = 4 };

/// Ground-truth record of which branch hit each pixel.
struct CorruptionMask {
  int rows = 0;
  int cols = 0;
  std::vector<CorruptionLabel> labels;

  CorruptionLabel at(int r, int c) const { return labels[std::size_t(r) * cols + c]; }
};

/// The generator identity, echoed in benchmark reports. The stream is the
/// standard mt19937_64 sequence; pixels are visited in row-major order and
/// each consumes one 53-bit uniform for the branch choice, then one 8-bit
/// draw (low byte of the next output) per corrupted channel in channel
/// order. This draw discipline is part of the reproducibility contract.
inline constexpr std::string_view kNoisePrngId = "mt19937_64";

/// Applies the noise model. Deterministic given (img, cfg); clean pixels are
/// bit-identical to the input.
std::pair<Image, CorruptionMask> corrupt(const Image& img, const NoiseConfig& cfg);

/// Per-image noise seed for benchmark runs, mixed from the base seed, the
/// image index, and the bit pattern of the noise level, so extending the
/// corpus never perturbs other images' noise.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t image_index, double level);

/// Renders a mask for visual inspection: clean=black, ch1=red, ch2=green,
/// ch3=blue, all=white.
Image mask_to_image(const CorruptionMask& mask);

} // namespace vecfilt
