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

// Scalar kernels for every pairwise measure. The lookup-table builders and
// the direct evaluators call the same per-component term functions, which is
// what makes the LUT and direct paths bit-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "vecfilt/image.hpp"

namespace vecfilt::detail {

// Per-component terms. Components with a zero-zero pair contribute nothing
// for the canberra/divergence/ware family.

inline double canberra_term(int a, int b) {
  if (a == 0 && b == 0) return 0.0;
  return double(std::abs(a - b)) / double(a + b);
}

inline double divergence_term(int a, int b) {
  if (a == 0 && b == 0) return 0.0;
  const double d = double(a - b);
  return d * d / double(a + b);
}

inline double ware_term(int a, int b) {
  if (a == 0 && b == 0) return 0.0;
  return double(std::abs(a - b)) / double(std::max(a, b));
}

// Magnitude-similarity term, also applied to unit-normalized components.
inline double fms_term(double a, double b, double K) {
  return (std::min(a, b) + K) / (std::max(a, b) + K);
}

inline double spatial_term(double t, int chebyshev_offset) {
  return t / (t + double(chebyshev_offset));
}

inline int chebyshev(PixelPos a, PixelPos b) {
  return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

// Integer helpers shared by several kernels.

inline std::int64_t dot3(const Rgb& x, const Rgb& y) {
  return std::int64_t(x.k[0]) * y.k[0] + std::int64_t(x.k[1]) * y.k[1] +
         std::int64_t(x.k[2]) * y.k[2];
}

inline std::int64_t norm_sq(const Rgb& x) { return dot3(x, x); }

inline bool is_zero(const Rgb& x) { return x.k[0] == 0 && x.k[1] == 0 && x.k[2] == 0; }

// Minkowski family. The integer-valued members keep an integer fast path;
// aggregates of these stay exact in 32 bits for any supported window.

inline int d1_int(const Rgb& x, const Rgb& y) {
  return std::abs(int(x.k[0]) - y.k[0]) + std::abs(int(x.k[1]) - y.k[1]) +
         std::abs(int(x.k[2]) - y.k[2]);
}

inline int d2sq_int(const Rgb& x, const Rgb& y) {
  const int a = int(x.k[0]) - y.k[0], b = int(x.k[1]) - y.k[1], c = int(x.k[2]) - y.k[2];
  return a * a + b * b + c * c;
}

inline int dinf_int(const Rgb& x, const Rgb& y) {
  return std::max({std::abs(int(x.k[0]) - y.k[0]), std::abs(int(x.k[1]) - y.k[1]),
                   std::abs(int(x.k[2]) - y.k[2])});
}

inline double d1(const Rgb& x, const Rgb& y) { return double(d1_int(x, y)); }

inline double d2sq(const Rgb& x, const Rgb& y) { return double(d2sq_int(x, y)); }

inline double d2(const Rgb& x, const Rgb& y) { return std::sqrt(d2sq(x, y)); }

inline double dinf(const Rgb& x, const Rgb& y) { return double(dinf_int(x, y)); }

// General Minkowski d_p for the directional-distance criterion.
inline double minkowski(const Rgb& x, const Rgb& y, double p) {
  if (p == 1.0) return d1(x, y);
  if (p == 2.0) return d2(x, y);
  if (std::isinf(p)) return dinf(x, y);
  const double s = std::pow(std::abs(double(x.k[0]) - y.k[0]), p) +
                   std::pow(std::abs(double(x.k[1]) - y.k[1]), p) +
                   std::pow(std::abs(double(x.k[2]) - y.k[2]), p);
  return std::pow(s, 1.0 / p);
}

// Normalized city-block family. The all-zero pair is defined as distance 0,
// which also covers every zero denominator below.

inline double bray(const Rgb& x, const Rgb& y) {
  const int num = std::abs(int(x.k[0]) - y.k[0]) + std::abs(int(x.k[1]) - y.k[1]) +
                  std::abs(int(x.k[2]) - y.k[2]);
  const int den = int(x.k[0]) + y.k[0] + x.k[1] + y.k[1] + x.k[2] + y.k[2];
  return den == 0 ? 0.0 : double(num) / double(den);
}

inline double soergel(const Rgb& x, const Rgb& y) {
  const int num = std::abs(int(x.k[0]) - y.k[0]) + std::abs(int(x.k[1]) - y.k[1]) +
                  std::abs(int(x.k[2]) - y.k[2]);
  const int den = std::max<int>(x.k[0], y.k[0]) + std::max<int>(x.k[1], y.k[1]) +
                  std::max<int>(x.k[2], y.k[2]);
  return den == 0 ? 0.0 : double(num) / double(den);
}

inline double goude(const Rgb& x, const Rgb& y) {
  const std::int64_t nx = norm_sq(x), ny = norm_sq(y), dot = dot3(x, y);
  const std::int64_t den = nx + ny + 2 * dot;
  if (den == 0) return 0.0;
  return std::sqrt(double(nx + ny - 2 * dot) / double(den));
}

inline double canberra_direct(const Rgb& x, const Rgb& y) {
  return canberra_term(x.k[0], y.k[0]) + canberra_term(x.k[1], y.k[1]) +
         canberra_term(x.k[2], y.k[2]);
}

inline double divergence_direct(const Rgb& x, const Rgb& y) {
  return std::sqrt(divergence_term(x.k[0], y.k[0]) + divergence_term(x.k[1], y.k[1]) +
                   divergence_term(x.k[2], y.k[2]));
}

inline double ware_direct(const Rgb& x, const Rgb& y) {
  return ware_term(x.k[0], y.k[0]) + ware_term(x.k[1], y.k[1]) + ware_term(x.k[2], y.k[2]);
}

inline double chord_direct(const Rgb& x, const Rgb& y) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::sqrt(double(x.k[k])) - std::sqrt(double(y.k[k]));
    s += d * d;
  }
  return std::sqrt(s);
}

// Angular distance. A single square root of the integer norm product keeps
// exactly parallel integer vectors at ratio 1.0, so their distance is an
// exact 0. Zero-vector conventions: one zero vector -> pi, both zero -> 0.
inline double cosine(const Rgb& x, const Rgb& y) {
  const bool zx = is_zero(x), zy = is_zero(y);
  if (zx && zy) return 0.0;
  if (zx || zy) return M_PI;
  const std::int64_t dot = dot3(x, y);
  const double ratio = double(dot) / std::sqrt(double(norm_sq(x) * norm_sq(y)));
  return std::acos(std::clamp(ratio, -1.0, 1.0));
}

// Fuzzy similarities, all in (0,1].

inline double fms(const Rgb& x, const Rgb& y, double K) {
  return fms_term(x.k[0], y.k[0], K) * fms_term(x.k[1], y.k[1], K) *
         fms_term(x.k[2], y.k[2], K);
}

// Directional similarity: magnitude similarity of the unit-normalized
// vectors. One zero vector -> 0, both zero -> 1.
inline double fds(const Rgb& x, const Rgb& y, double K) {
  const bool zx = is_zero(x), zy = is_zero(y);
  if (zx && zy) return 1.0;
  if (zx || zy) return 0.0;
  const double nx = std::sqrt(double(norm_sq(x))), ny = std::sqrt(double(norm_sq(y)));
  double s = 1.0;
  for (int k = 0; k < 3; ++k) {
    s *= fms_term(double(x.k[k]) / nx, double(y.k[k]) / ny, K);
  }
  return s;
}

inline double fmds(const Rgb& x, const Rgb& y, double K1, double K2) {
  return fms(x, y, K1) * fds(x, y, K2);
}

inline double cfs(const Rgb& x, PixelPos px, const Rgb& y, PixelPos py, double C, double t) {
  return C / (C + d2(x, y)) * spatial_term(t, chebyshev(px, py));
}

// LUT-backed variants. `lut` is a 256x256 row-major table of the matching
// per-component term; `sq` is the 256-entry square-root table.

inline double pair_lut_at(const double* lut, const Rgb& x, const Rgb& y, int k) {
  return lut[std::size_t(x.k[k]) * 256 + y.k[k]];
}

inline double canberra_lut(const double* lut, const Rgb& x, const Rgb& y) {
  return pair_lut_at(lut, x, y, 0) + pair_lut_at(lut, x, y, 1) + pair_lut_at(lut, x, y, 2);
}

inline double divergence_lut(const double* lut, const Rgb& x, const Rgb& y) {
  return std::sqrt(pair_lut_at(lut, x, y, 0) + pair_lut_at(lut, x, y, 1) +
                   pair_lut_at(lut, x, y, 2));
}

inline double ware_lut(const double* lut, const Rgb& x, const Rgb& y) {
  return pair_lut_at(lut, x, y, 0) + pair_lut_at(lut, x, y, 1) + pair_lut_at(lut, x, y, 2);
}

inline double fms_lut(const double* lut, const Rgb& x, const Rgb& y) {
  return pair_lut_at(lut, x, y, 0) * pair_lut_at(lut, x, y, 1) * pair_lut_at(lut, x, y, 2);
}

inline double chord_lut(const double* sq, const Rgb& x, const Rgb& y) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = sq[x.k[k]] - sq[y.k[k]];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double fmds_lut(const double* fms_k1_lut, const Rgb& x, const Rgb& y, double K2) {
  return fms_lut(fms_k1_lut, x, y) * fds(x, y, K2);
}

// `spatial` is indexed by the Chebyshev offset (0 .. window side - 1).
inline double cfs_lut(const double* spatial, const Rgb& x, PixelPos px, const Rgb& y,
                      PixelPos py, double C) {
  return C / (C + d2(x, y)) * spatial[chebyshev(px, py)];
}

} // namespace vecfilt::detail
