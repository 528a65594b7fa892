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

#include "vecfilt/measures.hpp"

#include <charconv>
#include <cstdio>
#include <utility>

#include "vecfilt/detail/kernels.hpp"
#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

struct MeasureName {
  MeasureId id;
  std::string_view name;
};

constexpr MeasureName kNames[] = {
    {MeasureId::d1, "d1"},
    {MeasureId::d2, "d2"},
    {MeasureId::d2sq, "d2sq"},
    {MeasureId::dinf, "dinf"},
    {MeasureId::bray, "bray"},
    {MeasureId::canberra, "canberra"},
    {MeasureId::chord, "chord"},
    {MeasureId::cosine, "cosine"},
    {MeasureId::divergence, "divergence"},
    {MeasureId::goude, "goude"},
    {MeasureId::soergel, "soergel"},
    {MeasureId::ware, "ware"},
    {MeasureId::fms, "fms"},
    {MeasureId::fds, "fds"},
    {MeasureId::fmds, "fmds"},
    {MeasureId::cfs, "cfs"},
};

double parse_positive(std::string_view value, std::string_view key, std::string_view whole) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("malformed value for '" + std::string(key) + "' in measure spec '" +
                      std::string(whole) + "'");
  }
  if (!(out > 0.0)) {
    throw ConfigError("parameter '" + std::string(key) + "' must be strictly positive in '" +
                      std::string(whole) + "'");
  }
  return out;
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

} // namespace

Orientation orientation(MeasureId id) {
  switch (id) {
  case MeasureId::fms:
  case MeasureId::fds:
  case MeasureId::fmds:
  case MeasureId::cfs:
    return Orientation::maximize;
  default:
    return Orientation::minimize;
  }
}

std::string_view to_string(MeasureId id) {
  for (const auto& m : kNames) {
    if (m.id == id) return m.name;
  }
  return "?";
}

MeasureId parse_measure_id(std::string_view s) {
  for (const auto& m : kNames) {
    if (m.name == s) return m.id;
  }
  throw ConfigError("unknown measure id '" + std::string(s) + "'");
}

MeasureSpec make_measure_spec(MeasureId id) {
  MeasureSpec spec;
  spec.id = id;
  switch (id) {
  case MeasureId::fms:
    spec.K = 1024.0;
    break;
  case MeasureId::fds:
    spec.K = 4.0;
    break;
  case MeasureId::fmds:
    spec.K1 = 1024.0;
    spec.K2 = 4.0;
    break;
  case MeasureId::cfs:
    spec.C = 150.0;
    spec.t = 4.0;
    break;
  default:
    break;
  }
  return spec;
}

MeasureSpec parse_measure_spec(std::string_view s) {
  const std::size_t colon = s.find(':');
  MeasureSpec spec = make_measure_spec(parse_measure_id(s.substr(0, colon)));

  if (colon == std::string_view::npos) return spec;
  std::string_view params = s.substr(colon + 1);
  while (!params.empty()) {
    const std::size_t comma = params.find(',');
    const std::string_view kv = params.substr(0, comma);
    params = comma == std::string_view::npos ? std::string_view{} : params.substr(comma + 1);

    const std::size_t eq = kv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value, got '" + std::string(kv) + "' in measure spec '" +
                        std::string(s) + "'");
    }
    const std::string_view key = kv.substr(0, eq);
    const double value = parse_positive(kv.substr(eq + 1), key, s);

    bool ok = false;
    switch (spec.id) {
    case MeasureId::fms:
    case MeasureId::fds:
      if ((ok = key == "K")) spec.K = value;
      break;
    case MeasureId::fmds:
      if ((ok = key == "K1")) spec.K1 = value;
      else if ((ok = key == "K2")) spec.K2 = value;
      break;
    case MeasureId::cfs:
      if ((ok = key == "C")) spec.C = value;
      else if ((ok = key == "t")) spec.t = value;
      break;
    default:
      break;
    }
    if (!ok) {
      throw ConfigError("measure '" + std::string(to_string(spec.id)) +
                        "' does not take parameter '" + std::string(key) + "'");
    }
  }
  return spec;
}

std::string format_measure_spec(const MeasureSpec& spec) {
  std::string label(to_string(spec.id));
  if (spec == make_measure_spec(spec.id)) return label;
  switch (spec.id) {
  case MeasureId::fms:
  case MeasureId::fds:
    return label + ":K=" + format_param(spec.K);
  case MeasureId::fmds:
    return label + ":K1=" + format_param(spec.K1) + ",K2=" + format_param(spec.K2);
  case MeasureId::cfs:
    return label + ":C=" + format_param(spec.C) + ",t=" + format_param(spec.t);
  default:
    return label;
  }
}

double eval_measure(const MeasureSpec& spec, const Rgb& x, const Rgb& y) {
  using namespace detail;
  switch (spec.id) {
  case MeasureId::d1: return d1(x, y);
  case MeasureId::d2: return d2(x, y);
  case MeasureId::d2sq: return d2sq(x, y);
  case MeasureId::dinf: return dinf(x, y);
  case MeasureId::bray: return bray(x, y);
  case MeasureId::canberra: return canberra_direct(x, y);
  case MeasureId::chord: return chord_direct(x, y);
  case MeasureId::cosine: return cosine(x, y);
  case MeasureId::divergence: return divergence_direct(x, y);
  case MeasureId::goude: return goude(x, y);
  case MeasureId::soergel: return soergel(x, y);
  case MeasureId::ware: return ware_direct(x, y);
  case MeasureId::fms: return fms(x, y, spec.K);
  case MeasureId::fds: return fds(x, y, spec.K);
  case MeasureId::fmds: return fmds(x, y, spec.K1, spec.K2);
  case MeasureId::cfs:
    throw ConfigError("cfs requires window positions; use eval_cfs");
  }
  throw ConfigError("unknown measure id");
}

double eval_cfs(const Rgb& x, PixelPos px, const Rgb& y, PixelPos py, double C, double t) {
  return detail::cfs(x, px, y, py, C, t);
}

PairLut build_pair_lut(PairTerm term, double K) {
  PairLut lut;
  lut.term = term;
  lut.K = term == PairTerm::fms ? K : 0.0;
  lut.table.resize(256 * 256);
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      double v = 0.0;
      switch (term) {
      case PairTerm::canberra: v = detail::canberra_term(a, b); break;
      case PairTerm::divergence: v = detail::divergence_term(a, b); break;
      case PairTerm::ware: v = detail::ware_term(a, b); break;
      case PairTerm::fms: v = detail::fms_term(a, b, K); break;
      }
      lut.table[std::size_t(a) * 256 + b] = v;
    }
  }
  return lut;
}

SqrtLut build_sqrt_lut() {
  SqrtLut lut;
  for (int v = 0; v < 256; ++v) lut.table[std::size_t(v)] = std::sqrt(double(v));
  return lut;
}

SpatialLut build_spatial_lut(int window_side, double t) {
  SpatialLut lut;
  lut.t = t;
  lut.table.resize(std::size_t(window_side));
  for (int off = 0; off < window_side; ++off) {
    lut.table[std::size_t(off)] = detail::spatial_term(t, off);
  }
  return lut;
}

LutSet LutSet::build(const MeasureSpec& spec, int window_side) {
  LutSet set;
  set.spec_ = spec;
  switch (spec.id) {
  case MeasureId::canberra: set.pair_ = build_pair_lut(PairTerm::canberra); break;
  case MeasureId::divergence: set.pair_ = build_pair_lut(PairTerm::divergence); break;
  case MeasureId::ware: set.pair_ = build_pair_lut(PairTerm::ware); break;
  case MeasureId::fms: set.pair_ = build_pair_lut(PairTerm::fms, spec.K); break;
  case MeasureId::fmds: set.pair_ = build_pair_lut(PairTerm::fms, spec.K1); break;
  case MeasureId::chord: set.sqrt_ = build_sqrt_lut(); break;
  case MeasureId::cfs: set.spatial_ = build_spatial_lut(window_side, spec.t); break;
  default: break;
  }
  return set;
}

namespace {

void check_luts(const MeasureSpec& spec, const LutSet& luts) {
  if (luts.empty()) {
    // Direct-only measure: no tables to match.
    return;
  }
  if (!(luts.spec() == spec)) {
    throw ConfigError("lookup tables were built for measure '" +
                      format_measure_spec(luts.spec()) + "', not '" +
                      format_measure_spec(spec) + "'");
  }
}

} // namespace

double lut_eval(const MeasureSpec& spec, const LutSet& luts, const Rgb& x, const Rgb& y) {
  check_luts(spec, luts);
  switch (spec.id) {
  case MeasureId::canberra:
  case MeasureId::divergence:
  case MeasureId::ware:
  case MeasureId::fms:
  case MeasureId::fmds:
    if (!luts.pair()) throw ConfigError("missing 2D term table for " + std::string(to_string(spec.id)));
    break;
  case MeasureId::chord:
    if (!luts.sqrt()) throw ConfigError("missing sqrt table for chord");
    break;
  default:
    break;
  }
  switch (spec.id) {
  case MeasureId::canberra: return detail::canberra_lut(luts.pair()->table.data(), x, y);
  case MeasureId::divergence: return detail::divergence_lut(luts.pair()->table.data(), x, y);
  case MeasureId::ware: return detail::ware_lut(luts.pair()->table.data(), x, y);
  case MeasureId::fms: return detail::fms_lut(luts.pair()->table.data(), x, y);
  case MeasureId::fmds: return detail::fmds_lut(luts.pair()->table.data(), x, y, spec.K2);
  case MeasureId::chord: return detail::chord_lut(luts.sqrt()->table.data(), x, y);
  default:
    return eval_measure(spec, x, y);
  }
}

double lut_eval_cfs(const MeasureSpec& spec, const LutSet& luts, const Rgb& x, PixelPos px,
                    const Rgb& y, PixelPos py) {
  if (spec.id != MeasureId::cfs) throw ConfigError("lut_eval_cfs requires a cfs spec");
  check_luts(spec, luts);
  if (!luts.spatial()) throw ConfigError("missing spatial table for cfs");
  const int off = detail::chebyshev(px, py);
  if (off >= int(luts.spatial()->table.size())) {
    throw ConfigError("spatial table too small for offset " + std::to_string(off));
  }
  return detail::cfs_lut(luts.spatial()->table.data(), x, px, y, py, spec.C);
}

} // namespace vecfilt
