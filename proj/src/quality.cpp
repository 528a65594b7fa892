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

#include "vecfilt/quality.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vecfilt/detail/kernels.hpp"
#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

// sRGB decoding of an 8-bit component, tabulated once (a pure function of
// the byte value, so the table changes nothing numerically).
const std::array<double, 256>& srgb_decode_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int v = 0; v < 256; ++v) {
      const double s = double(v) / 255.0;
      t[std::size_t(v)] = s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

// D65 reference white of the sRGB XYZ matrix.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

inline double lab_f(double t) {
  constexpr double kEps = 216.0 / 24389.0;  // (6/29)^3
  constexpr double kKappa = 24389.0 / 27.0; // (29/3)^3
  return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

void require_same_shape(const Image& x, const Image& y, const char* op) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument(std::string(op) + ": image dimensions differ (" +
                                std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                " vs " + std::to_string(y.rows()) + "x" +
                                std::to_string(y.cols()) + ")");
  }
}

inline double lab_norm(const Lab& v) {
  return std::sqrt(v.L * v.L + v.a * v.a + v.b * v.b);
}

inline double lab_dist(const Lab& p, const Lab& q) {
  const double dL = p.L - q.L, da = p.a - q.a, db = p.b - q.b;
  return std::sqrt(dL * dL + da * da + db * db);
}

} // namespace

Lab rgb_to_lab(const Rgb& v) {
  const auto& dec = srgb_decode_table();
  const double r = dec[v.k[0]], g = dec[v.k[1]], b = dec[v.k[2]];

  const double X = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double Y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double Z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  const double fx = lab_f(X / kXn), fy = lab_f(Y / kYn), fz = lab_f(Z / kZn);
  return Lab{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double mae(const Image& x, const Image& y) {
  require_same_shape(x, y, "mae");
  double sum = 0.0;
  const auto px = x.pixels(), py = y.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) sum += detail::d1(px[i], py[i]);
  return sum / (3.0 * double(px.size()));
}

double mse(const Image& x, const Image& y) {
  require_same_shape(x, y, "mse");
  double sum = 0.0;
  const auto px = x.pixels(), py = y.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) sum += detail::d2sq(px[i], py[i]);
  return sum / (3.0 * double(px.size()));
}

double ncd(const Image& x, const Image& y) {
  require_same_shape(x, y, "ncd");
  double num = 0.0, den = 0.0;
  const auto px = x.pixels(), py = y.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const Lab lx = rgb_to_lab(px[i]);
    num += lab_dist(lx, rgb_to_lab(py[i]));
    den += lab_norm(lx);
  }
  if (den == 0.0) {
    throw NumericError("ncd undefined: reference image is entirely black");
  }
  return num / den;
}

QualityReport compare(const Image& reference, const Image& test) {
  return QualityReport{mae(reference, test), mse(reference, test), ncd(reference, test)};
}

} // namespace vecfilt
