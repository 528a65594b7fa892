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

// Naive reference implementations used only by tests. Everything here is
// written as plain scalar loops, independent of the library's kernels and
// lookup tables, so the two routes can check each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vecfilt/image.hpp"

namespace oracle {

using vecfilt::Image;
using vecfilt::PixelPos;
using vecfilt::Rgb;

inline double d1(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) s += std::abs(double(x.k[k]) - double(y.k[k]));
  return s;
}

inline double d2sq(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) {
    const double d = double(x.k[k]) - double(y.k[k]);
    s += d * d;
  }
  return s;
}

inline double d2(const Rgb& x, const Rgb& y) { return std::sqrt(d2sq(x, y)); }

inline double dinf(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) s = std::max(s, std::abs(double(x.k[k]) - double(y.k[k])));
  return s;
}

inline double minkowski(const Rgb& x, const Rgb& y, double p) {
  double s = 0;
  for (int k = 0; k < 3; ++k) s += std::pow(std::abs(double(x.k[k]) - double(y.k[k])), p);
  return std::pow(s, 1.0 / p);
}

inline bool is_zero(const Rgb& x) { return x.k[0] == 0 && x.k[1] == 0 && x.k[2] == 0; }

inline double bray(const Rgb& x, const Rgb& y) {
  if (is_zero(x) && is_zero(y)) return 0.0;
  double num = 0, den = 0;
  for (int k = 0; k < 3; ++k) {
    num += std::abs(double(x.k[k]) - double(y.k[k]));
    den += double(x.k[k]) + double(y.k[k]);
  }
  return num / den;
}

inline double canberra(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) {
    if (x.k[k] == 0 && y.k[k] == 0) continue;
    s += std::abs(double(x.k[k]) - double(y.k[k])) / (double(x.k[k]) + double(y.k[k]));
  }
  return s;
}

inline double chord(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::sqrt(double(x.k[k])) - std::sqrt(double(y.k[k]));
    s += d * d;
  }
  return std::sqrt(s);
}

inline double cosine(const Rgb& x, const Rgb& y) {
  const bool zx = is_zero(x), zy = is_zero(y);
  if (zx && zy) return 0.0;
  if (zx || zy) return M_PI;
  double dot = 0, nx = 0, ny = 0;
  for (int k = 0; k < 3; ++k) {
    dot += double(x.k[k]) * double(y.k[k]);
    nx += double(x.k[k]) * double(x.k[k]);
    ny += double(y.k[k]) * double(y.k[k]);
  }
  return std::acos(std::clamp(dot / (std::sqrt(nx) * std::sqrt(ny)), -1.0, 1.0));
}

inline double divergence(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) {
    if (x.k[k] == 0 && y.k[k] == 0) continue;
    const double d = double(x.k[k]) - double(y.k[k]);
    s += d * d / (double(x.k[k]) + double(y.k[k]));
  }
  return std::sqrt(s);
}

inline double goude(const Rgb& x, const Rgb& y) {
  if (is_zero(x) && is_zero(y)) return 0.0;
  double dot = 0, nx = 0, ny = 0;
  for (int k = 0; k < 3; ++k) {
    dot += double(x.k[k]) * double(y.k[k]);
    nx += double(x.k[k]) * double(x.k[k]);
    ny += double(y.k[k]) * double(y.k[k]);
  }
  return std::sqrt((nx + ny - 2 * dot) / (nx + ny + 2 * dot));
}

inline double soergel(const Rgb& x, const Rgb& y) {
  if (is_zero(x) && is_zero(y)) return 0.0;
  double num = 0, den = 0;
  for (int k = 0; k < 3; ++k) {
    num += std::abs(double(x.k[k]) - double(y.k[k]));
    den += std::max(double(x.k[k]), double(y.k[k]));
  }
  return num / den;
}

inline double ware(const Rgb& x, const Rgb& y) {
  double s = 0;
  for (int k = 0; k < 3; ++k) {
    if (x.k[k] == 0 && y.k[k] == 0) continue;
    s += std::abs(double(x.k[k]) - double(y.k[k])) / std::max(double(x.k[k]), double(y.k[k]));
  }
  return s;
}

inline double fms(const Rgb& x, const Rgb& y, double K) {
  double s = 1.0;
  for (int k = 0; k < 3; ++k) {
    s *= (std::min(double(x.k[k]), double(y.k[k])) + K) /
         (std::max(double(x.k[k]), double(y.k[k])) + K);
  }
  return s;
}

inline double fds(const Rgb& x, const Rgb& y, double K) {
  const bool zx = is_zero(x), zy = is_zero(y);
  if (zx && zy) return 1.0;
  if (zx || zy) return 0.0;
  double nx = 0, ny = 0;
  for (int k = 0; k < 3; ++k) {
    nx += double(x.k[k]) * double(x.k[k]);
    ny += double(y.k[k]) * double(y.k[k]);
  }
  nx = std::sqrt(nx);
  ny = std::sqrt(ny);
  double s = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double a = double(x.k[k]) / nx, b = double(y.k[k]) / ny;
    s *= (std::min(a, b) + K) / (std::max(a, b) + K);
  }
  return s;
}

inline double fmds(const Rgb& x, const Rgb& y, double K1, double K2) {
  return fms(x, y, K1) * fds(x, y, K2);
}

inline double cfs(const Rgb& x, PixelPos px, const Rgb& y, PixelPos py, double C, double t) {
  const double spatial =
      std::max(std::abs(double(px.row) - py.row), std::abs(double(px.col) - py.col));
  return C / (C + d2(x, y)) * (t / (t + spatial));
}

// Brute-force aggregate over a window with any pair function, naive j loop.
template <class F>
std::vector<double> aggregate(const std::vector<Rgb>& v, const F& f) {
  std::vector<double> D(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) D[i] += f(v[i], v[j]);
  }
  return D;
}

// Window contents by clamped indexing into the unpadded image: equivalent to
// replicate padding, derived independently of pad_replicate/window_at.
inline std::vector<Rgb> clamped_window(const Image& img, int r, int c, int side) {
  const int radius = (side - 1) / 2;
  std::vector<Rgb> v;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      v.push_back(img.at(std::clamp(r + dr, 0, img.rows() - 1),
                         std::clamp(c + dc, 0, img.cols() - 1)));
    }
  }
  return v;
}

// Independent sRGB -> CIELAB conversion (D65), coded from the standard
// definition with its own constant expressions.
struct Lab3 {
  double L, a, b;
};

inline Lab3 rgb_to_lab(const Rgb& v) {
  double lin[3];
  for (int k = 0; k < 3; ++k) {
    const double s = double(v.k[k]) / 255.0;
    lin[k] = s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
  }
  const double xyz[3] = {
      0.4124564 * lin[0] + 0.3575761 * lin[1] + 0.1804375 * lin[2],
      0.2126729 * lin[0] + 0.7151522 * lin[1] + 0.0721750 * lin[2],
      0.0193339 * lin[0] + 0.1191920 * lin[1] + 0.9503041 * lin[2],
  };
  const double white[3] = {0.95047, 1.0, 1.08883};
  double f[3];
  for (int k = 0; k < 3; ++k) {
    const double t = xyz[k] / white[k];
    const double eps = std::pow(6.0 / 29.0, 3.0);
    f[k] = t > eps ? std::pow(t, 1.0 / 3.0) : t / (3.0 * std::pow(6.0 / 29.0, 2.0)) + 4.0 / 29.0;
  }
  return Lab3{116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

inline double mae(const Image& x, const Image& y) {
  double s = 0;
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) {
      for (int k = 0; k < 3; ++k) {
        s += std::abs(double(x.at(r, c).k[k]) - double(y.at(r, c).k[k]));
      }
    }
  }
  return s / (3.0 * x.rows() * x.cols());
}

inline double mse(const Image& x, const Image& y) {
  double s = 0;
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) {
      for (int k = 0; k < 3; ++k) {
        const double d = double(x.at(r, c).k[k]) - double(y.at(r, c).k[k]);
        s += d * d;
      }
    }
  }
  return s / (3.0 * x.rows() * x.cols());
}

inline double ncd(const Image& x, const Image& y) {
  double num = 0, den = 0;
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) {
      const Lab3 lx = rgb_to_lab(x.at(r, c));
      const Lab3 ly = rgb_to_lab(y.at(r, c));
      num += std::sqrt((lx.L - ly.L) * (lx.L - ly.L) + (lx.a - ly.a) * (lx.a - ly.a) +
                       (lx.b - ly.b) * (lx.b - ly.b));
      den += std::sqrt(lx.L * lx.L + lx.a * lx.a + lx.b * lx.b);
    }
  }
  return num / den;
}

// Sort-based ranking: rank = index of first occurrence in the sorted order.
inline std::vector<double> sort_ranks(const std::vector<double>& scores, bool lower_better) {
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  if (!lower_better) std::reverse(sorted.begin(), sorted.end());
  std::vector<double> ranks(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    ranks[i] = double(std::find(sorted.begin(), sorted.end(), scores[i]) - sorted.begin());
  }
  return ranks;
}

// Deterministic test vectors. Masking the low byte of mt19937_64 output is
// exactly uniform over {0,...,255}.
inline Rgb random_rgb(std::mt19937_64& rng) {
  return Rgb{{std::uint8_t(rng() & 0xFF), std::uint8_t(rng() & 0xFF), std::uint8_t(rng() & 0xFF)}};
}

inline Rgb random_rgb_small(std::mt19937_64& rng, int bound) {
  return Rgb{{std::uint8_t(rng() % std::uint64_t(bound)), std::uint8_t(rng() % std::uint64_t(bound)),
              std::uint8_t(rng() % std::uint64_t(bound))}};
}

inline Image random_image(std::mt19937_64& rng, int rows, int cols) {
  Image img(rows, cols);
  for (auto& px : img.pixels()) px = random_rgb(rng);
  return img;
}

} // namespace oracle
