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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecfilt/image.hpp"

namespace vecfilt {

/// The catalog of pairwise ordering criteria: the four Minkowski variants,
/// eight classical normalized distances, and four fuzzy similarities.
enum class MeasureId {
  d1,
  d2,
  d2sq,
  dinf,
  bray,
  canberra,
  chord,
  cosine,
  divergence,
  goude,
  soergel,
  ware,
  fms,
  fds,
  fmds,
  cfs,
};

inline constexpr std::array<MeasureId, 16> kAllMeasures = {
    MeasureId::d1,     MeasureId::d2,         MeasureId::d2sq,  MeasureId::dinf,
    MeasureId::bray,   MeasureId::canberra,   MeasureId::chord, MeasureId::cosine,
    MeasureId::divergence, MeasureId::goude,  MeasureId::soergel, MeasureId::ware,
    MeasureId::fms,    MeasureId::fds,        MeasureId::fmds,  MeasureId::cfs,
};

/// Whether the filter selects the window vector with the minimum aggregate
/// score (distances) or the maximum (fuzzy similarities).
enum class Orientation { minimize, maximize };

Orientation orientation(MeasureId id);
std::string_view to_string(MeasureId id);
MeasureId parse_measure_id(std::string_view s);

/// One ordering criterion with its parameters. Components are used as raw
/// integers in [0,255]; the parameter defaults assume that scale.
struct MeasureSpec {
  MeasureId id = MeasureId::d1;
  double K = 0.0;  // fms / fds
  double K1 = 0.0; // fmds magnitude part
  double K2 = 0.0; // fmds directional part
  double C = 0.0;  // cfs color term
  double t = 0.0;  // cfs spatial term

  Orientation orientation() const { return vecfilt::orientation(id); }

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// Returns the spec for `id` with default parameters
/// (fms K=1024, fds K=4, fmds K1=1024 K2=4, cfs C=150 t=4).
MeasureSpec make_measure_spec(MeasureId id);

/// Parses CLI measure strings such as "d2", "fms:K=512" or "cfs:C=150,t=4".
/// Unknown ids, unknown parameter names, and non-positive parameter values
/// raise ConfigError naming the offending token.
MeasureSpec parse_measure_spec(std::string_view s);

/// Canonical label: the bare id when all parameters are at their defaults,
/// otherwise id:key=value,... in a fixed key order.
std::string format_measure_spec(const MeasureSpec& spec);

/// Evaluates one pairwise score with the zero-vector conventions. cfs
/// requires window positions and is rejected here; use eval_cfs.
double eval_measure(const MeasureSpec& spec, const Rgb& x, const Rgb& y);

/// The combined fuzzy similarity: color closeness times spatial proximity,
/// [C/(C+d2(x,y))] * [t/(t+max(|dr|,|dc|))].
double eval_cfs(const Rgb& x, PixelPos px, const Rgb& y, PixelPos py, double C, double t);

// ---- Lookup-table acceleration ----

/// Which per-component term a 256x256 table tabulates.
enum class PairTerm { canberra, divergence, ware, fms };

/// 256x256 table of one per-component term, row-major by (a, b). Entries are
/// exactly the values the direct evaluator computes, so both paths agree
/// bit for bit.
struct PairLut {
  PairTerm term = PairTerm::canberra;
  double K = 0.0; // fms only
  std::vector<double> table; // 65536 entries

  double at(std::uint8_t a, std::uint8_t b) const { return table[std::size_t(a) * 256 + b]; }
};

PairLut build_pair_lut(PairTerm term, double K = 0.0);

/// table[v] = sqrt(v) for v in 0..255.
struct SqrtLut {
  std::array<double, 256> table{};
};

SqrtLut build_sqrt_lut();

/// Spatial proximity term t/(t+offset), indexed by Chebyshev offset
/// 0 .. window_side-1 (clamped border positions only shrink offsets).
struct SpatialLut {
  double t = 0.0;
  std::vector<double> table;
};

SpatialLut build_spatial_lut(int window_side, double t);

/// The prepared tables for one measure spec. Measures without a tabulated
/// form carry no tables and evaluate directly.
class LutSet {
public:
  LutSet() = default;

  /// Builds whatever `spec` can use: 2D term tables for canberra,
  /// divergence, ware, fms (and the magnitude part of fmds), the sqrt table
  /// for chord, and the spatial table for cfs.
  static LutSet build(const MeasureSpec& spec, int window_side = 3);

  const MeasureSpec& spec() const { return spec_; }
  bool empty() const { return !pair_ && !sqrt_ && !spatial_; }

  const PairLut* pair() const { return pair_ ? &*pair_ : nullptr; }
  const SqrtLut* sqrt() const { return sqrt_ ? &*sqrt_ : nullptr; }
  const SpatialLut* spatial() const { return spatial_ ? &*spatial_ : nullptr; }

private:
  MeasureSpec spec_{};
  std::optional<PairLut> pair_;
  std::optional<SqrtLut> sqrt_;
  std::optional<SpatialLut> spatial_;
};

/// Table-accelerated evaluation; bit-identical to eval_measure. Throws
/// ConfigError if `luts` was built for a different spec. Measures with no
/// tabulated form fall through to the direct path.
double lut_eval(const MeasureSpec& spec, const LutSet& luts, const Rgb& x, const Rgb& y);

/// Table-accelerated cfs (spatial term from the table).
double lut_eval_cfs(const MeasureSpec& spec, const LutSet& luts, const Rgb& x, PixelPos px,
                    const Rgb& y, PixelPos py);

} // namespace vecfilt
