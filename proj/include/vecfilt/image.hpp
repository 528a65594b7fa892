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
#include <span>
#include <vector>

namespace vecfilt {

/// One pixel: red, green, blue intensities in [0,255].
struct Rgb {
  std::uint8_t k[3]{0, 0, 0};

  constexpr std::uint8_t r() const { return k[0]; }
  constexpr std::uint8_t g() const { return k[1]; }
  constexpr std::uint8_t b() const { return k[2]; }

  friend constexpr bool operator==(const Rgb& a, const Rgb& b) {
    return a.k[0] == b.k[0] && a.k[1] == b.k[1] && a.k[2] == b.k[2];
  }
};

/// Pixel coordinate in the unpadded image frame.
struct PixelPos {
  std::int32_t row = 0;
  std::int32_t col = 0;

  friend constexpr bool operator==(PixelPos a, PixelPos b) {
    return a.row == b.row && a.col == b.col;
  }
};

/// An M x N raster of RGB pixels, row-major. Immutable once filled; safe to
/// share across threads.
class Image {
public:
  Image() = default;
  Image(int rows, int cols);
  Image(int rows, int cols, std::vector<Rgb> pixels);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t pixel_count() const { return pixels_.size(); }

  const Rgb& at(int r, int c) const { return pixels_[std::size_t(r) * cols_ + c]; }
  Rgb& at(int r, int c) { return pixels_[std::size_t(r) * cols_ + c]; }

  std::span<const Rgb> pixels() const { return pixels_; }
  std::span<Rgb> pixels() { return pixels_; }

  /// Pointer to the first pixel of a row.
  const Rgb* row(int r) const { return pixels_.data() + std::size_t(r) * cols_; }
  Rgb* row(int r) { return pixels_.data() + std::size_t(r) * cols_; }

  friend bool operator==(const Image& a, const Image& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.pixels_ == b.pixels_;
  }

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rgb> pixels_;
};

/// The contents of one sqrt(n) x sqrt(n) sliding window in raster order.
/// The center element sits at index (n-1)/2 (0-based). Positions are given
/// in the unpadded frame; positions of replicated border pixels are clamped
/// to the nearest valid coordinate.
struct Window {
  int n = 0;
  std::vector<Rgb> vectors;
  std::vector<PixelPos> positions;

  int center_index() const { return (n - 1) / 2; }
};

/// Validates a window size n (perfect square with odd root >= 3) and returns
/// the window side sqrt(n). Throws ConfigError otherwise.
int window_side(int n);

/// Replicate-pads an image by `radius` rows/columns on every side.
Image pad_replicate(const Image& img, int radius);

/// Extracts the window of size n centered at (r, c) of `padded`, which must
/// be the result of pad_replicate with radius (sqrt(n)-1)/2. Positions are
/// reported in the unpadded frame, clamped at the borders. Throws
/// std::out_of_range if (r, c) is not a valid center.
Window window_at(const Image& padded, int r, int c, int n);

} // namespace vecfilt
