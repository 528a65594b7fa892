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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecfilt/image.hpp"
#include "vecfilt/measures.hpp"

namespace vecfilt {

enum class FilterKind {
  identity, ///< "none": passes the image through unchanged
  measure,  ///< one pairwise measure plugged into the aggregate ordering
  ddf,      ///< product of aggregate Minkowski and aggregate angular distance
};

/// A complete filter configuration. Ties in the aggregate scores are always
/// broken toward the lowest window index.
struct FilterSpec {
  FilterKind kind = FilterKind::measure;
  MeasureSpec measure = make_measure_spec(MeasureId::d1);
  double ddf_p = 2.0;     ///< Minkowski exponent of the ddf magnitude factor
  int window_side = 3;    ///< sqrt(n); odd, >= 3
  bool d2sq_shortcut = true; ///< route d2sq through the mean-vector engine

  int n() const { return window_side * window_side; }
  Orientation orientation() const;

  /// "none", "d1", "cfs:C=150,t=4", "ddf", "ddf:p=1", ...
  std::string label() const;

  friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

/// Parses filter strings: "none", "ddf", "ddf:p=2", or any measure spec
/// accepted by parse_measure_spec. Throws ConfigError on unknown ids and on
/// ddf exponents below 1.
FilterSpec parse_filter_spec(std::string_view s, int window_side = 3);

/// The standard 18-entry filter set: the identity filter, the 16 measures
/// with default parameters, and ddf with p=2.
std::vector<FilterSpec> default_filter_set(int window_side = 3);

/// Aggregate score of every window vector: D_i = sum_j score(x_i, x_j),
/// including the j=i self term. Uses the tables in `luts` when present,
/// otherwise evaluates directly. cfs scores use the window positions.
std::vector<double> aggregate_scores(const Window& w, const MeasureSpec& spec,
                                     const LutSet* luts = nullptr);

/// Aggregate criterion of the directional-distance filter:
/// D_i = (sum_j d_p(x_i,x_j)) * (sum_j d_cosine(x_i,x_j)).
std::vector<double> ddf_scores(const Window& w, double p);

/// Index of the minimum (or maximum, for similarity orientation) score,
/// ties broken toward the lowest index. Throws NumericError naming
/// `measure_name` if any score is NaN.
std::size_t select_output(std::span<const double> scores, Orientation orientation,
                          std::string_view measure_name = {});

/// A filter with its lookup tables already built, so repeated runs (and
/// timed runs) exclude table construction.
class PreparedFilter {
public:
  explicit PreparedFilter(FilterSpec spec);

  const FilterSpec& spec() const { return spec_; }
  const LutSet& luts() const { return luts_; }

  /// Filters the whole image. With threads > 1 the output rows are
  /// partitioned across workers; the result is identical for any count.
  Image run(const Image& img, int threads = 1) const;

private:
  FilterSpec spec_;
  LutSet luts_;
};

/// Convenience wrapper: builds the tables and runs once.
Image filter_image(const Image& img, const FilterSpec& spec, int threads = 1);

/// The d2sq fast path: per window, pick the vector closest to the window
/// mean. Integer arithmetic (comparing ||n*x_i - sum||^2) makes the
/// selection exactly equal to the generic aggregate-d2sq engine, ties
/// included.
Image filter_d2sq_shortcut(const Image& img, int n, int threads = 1);

} // namespace vecfilt
