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

#include "vecfilt/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vecfilt/errors.hpp"

namespace vecfilt {

Image::Image(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
  pixels_.resize(std::size_t(rows) * cols);
}

Image::Image(int rows, int cols, std::vector<Rgb> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (pixels_.size() != std::size_t(rows) * cols) {
    throw std::invalid_argument("pixel count " + std::to_string(pixels_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

int window_side(int n) {
  int side = int(std::lround(std::sqrt(double(n))));
  if (side * side != n || side < 3 || side % 2 == 0) {
    throw ConfigError("window size must be a perfect square with odd root >= 3, got n=" +
                      std::to_string(n));
  }
  return side;
}

Image pad_replicate(const Image& img, int radius) {
  if (radius < 0) {
    throw std::invalid_argument("padding radius must be non-negative");
  }
  if (radius == 0) return img;

  const int M = img.rows(), N = img.cols();
  Image out(M + 2 * radius, N + 2 * radius);
  for (int r = 0; r < out.rows(); ++r) {
    const int sr = std::clamp(r - radius, 0, M - 1);
    Rgb* dst = out.row(r);
    const Rgb* src = img.row(sr);
    for (int c = 0; c < out.cols(); ++c) {
      dst[c] = src[std::clamp(c - radius, 0, N - 1)];
    }
  }
  return out;
}

Window window_at(const Image& padded, int r, int c, int n) {
  const int side = window_side(n);
  const int radius = (side - 1) / 2;
  if (r < radius || c < radius || r >= padded.rows() - radius || c >= padded.cols() - radius) {
    throw std::out_of_range("window center (" + std::to_string(r) + "," + std::to_string(c) +
                            ") out of range for window side " + std::to_string(side));
  }
  const int orig_rows = padded.rows() - 2 * radius;
  const int orig_cols = padded.cols() - 2 * radius;

  Window w;
  w.n = n;
  w.vectors.reserve(std::size_t(n));
  w.positions.reserve(std::size_t(n));
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      w.vectors.push_back(padded.at(r + dr, c + dc));
      w.positions.push_back(PixelPos{std::clamp(r + dr - radius, 0, orig_rows - 1),
                                     std::clamp(c + dc - radius, 0, orig_cols - 1)});
    }
  }
  return w;
}

} // namespace vecfilt
