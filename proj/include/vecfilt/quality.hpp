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

#include "vecfilt/image.hpp"

namespace vecfilt {

/// CIELAB coordinates under sRGB primaries and the D65 white point.
struct Lab {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// sRGB gamma expansion, linear RGB -> XYZ (D65), XYZ -> L*a*b*.
Lab rgb_to_lab(const Rgb& v);

/// Mean absolute error per channel sample: (1/3MN) sum of city-block pixel
/// distances. Detail-preservation criterion.
double mae(const Image& x, const Image& y);

/// Mean squared error per channel sample: (1/3MN) sum of squared Euclidean
/// pixel distances. Noise-suppression criterion.
double mse(const Image& x, const Image& y);

/// Normalized color difference: total CIELAB error divided by the total
/// CIELAB magnitude of the reference image `x`. Color-preservation
/// criterion; throws NumericError if `x` is entirely black.
double ncd(const Image& x, const Image& y);

struct QualityReport {
  double mae = 0.0;
  double mse = 0.0;
  double ncd = 0.0;
};

/// All three criteria in one pass over the pair.
QualityReport compare(const Image& reference, const Image& test);

} // namespace vecfilt
