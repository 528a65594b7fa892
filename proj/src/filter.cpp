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

#include "vecfilt/filter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <thread>
#include <type_traits>
#include <utility>

#include "vecfilt/detail/kernels.hpp"
#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

// The engine walks one window at a time through a scorer: begin() sees the
// window once (a chance to precompute per-vector state), then score(i, j)
// is called per slot pair. All scorers reproduce eval_measure / lut_eval
// values exactly.

// Stateless pairwise function of the two vectors.
template <class F>
struct PlainScorer {
  static constexpr bool needs_positions = false;
  F f;
  const Rgb* v = nullptr;

  void begin(const Rgb* vectors, const PixelPos*, int) { v = vectors; }
  double score(int i, int j) const { return f(v[i], v[j]); }
};

template <class F>
PlainScorer<F> make_plain(F f) {
  return PlainScorer<F>{f};
}

// Pairwise function that also sees the window positions (cfs).
template <class F>
struct PosScorer {
  static constexpr bool needs_positions = true;
  F f;
  const Rgb* v = nullptr;
  const PixelPos* p = nullptr;

  void begin(const Rgb* vectors, const PixelPos* positions, int) {
    v = vectors;
    p = positions;
  }
  double score(int i, int j) const { return f(v[i], p[i], v[j], p[j]); }
};

template <class F>
PosScorer<F> make_pos(F f) {
  return PosScorer<F>{f};
}

// Directional similarity with the unit-normalized window vectors computed
// once per window. unit[i][k] equals x_ik / ||x_i|| exactly as the direct
// evaluator computes it, so scores are bit-identical.
struct FdsScorer {
  static constexpr bool needs_positions = false;
  double K = 4.0;
  std::vector<std::array<double, 3>> unit;
  std::vector<char> zero;

  explicit FdsScorer(double k) : K(k) {}

  void begin(const Rgb* v, const PixelPos*, int n) {
    unit.resize(static_cast<std::size_t>(n));
    zero.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const Rgb& x = v[i];
      zero[std::size_t(i)] = detail::is_zero(x);
      if (zero[std::size_t(i)]) {
        unit[std::size_t(i)] = {0.0, 0.0, 0.0};
        continue;
      }
      const double norm = std::sqrt(double(detail::norm_sq(x)));
      unit[std::size_t(i)] = {double(x.k[0]) / norm, double(x.k[1]) / norm,
                              double(x.k[2]) / norm};
    }
  }

  double directional(int i, int j) const {
    if (zero[std::size_t(i)] && zero[std::size_t(j)]) return 1.0;
    if (zero[std::size_t(i)] || zero[std::size_t(j)]) return 0.0;
    const auto& a = unit[std::size_t(i)];
    const auto& b = unit[std::size_t(j)];
    return detail::fms_term(a[0], b[0], K) * detail::fms_term(a[1], b[1], K) *
           detail::fms_term(a[2], b[2], K);
  }

  double score(int i, int j) const { return directional(i, j); }
};

// Magnitude-directional product; the magnitude part reads the fms table.
struct FmdsLutScorer {
  static constexpr bool needs_positions = false;
  const double* fms_lut;
  FdsScorer fds;
  const Rgb* v = nullptr;

  FmdsLutScorer(const double* lut, double k2) : fms_lut(lut), fds(k2) {}

  void begin(const Rgb* vectors, const PixelPos* positions, int n) {
    v = vectors;
    fds.begin(vectors, positions, n);
  }
  double score(int i, int j) const {
    return detail::fms_lut(fms_lut, v[i], v[j]) * fds.directional(i, j);
  }
};

struct FmdsDirectScorer {
  static constexpr bool needs_positions = false;
  double K1;
  FdsScorer fds;
  const Rgb* v = nullptr;

  FmdsDirectScorer(double k1, double k2) : K1(k1), fds(k2) {}

  void begin(const Rgb* vectors, const PixelPos* positions, int n) {
    v = vectors;
    fds.begin(vectors, positions, n);
  }
  double score(int i, int j) const {
    return detail::fms(v[i], v[j], K1) * fds.directional(i, j);
  }
};

// Invokes fn with the scorer for the measure, table-backed when `luts`
// provides tables. Each caller gets a fully inlined loop per measure.
template <class Fn>
decltype(auto) with_scorer(const MeasureSpec& spec, const LutSet* luts, Fn&& fn) {
  using namespace detail;
  const bool tab = luts != nullptr && !luts->empty();
  switch (spec.id) {
  case MeasureId::d1:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return d1_int(x, y); }));
  case MeasureId::d2:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return d2(x, y); }));
  case MeasureId::d2sq:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return d2sq_int(x, y); }));
  case MeasureId::dinf:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return dinf_int(x, y); }));
  case MeasureId::bray:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return bray(x, y); }));
  case MeasureId::canberra:
    if (tab) {
      const double* lut = luts->pair()->table.data();
      return fn(make_plain([lut](const Rgb& x, const Rgb& y) { return canberra_lut(lut, x, y); }));
    }
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return canberra_direct(x, y); }));
  case MeasureId::chord:
    if (tab) {
      const double* sq = luts->sqrt()->table.data();
      return fn(make_plain([sq](const Rgb& x, const Rgb& y) { return chord_lut(sq, x, y); }));
    }
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return chord_direct(x, y); }));
  case MeasureId::cosine:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return cosine(x, y); }));
  case MeasureId::divergence:
    if (tab) {
      const double* lut = luts->pair()->table.data();
      return fn(make_plain([lut](const Rgb& x, const Rgb& y) { return divergence_lut(lut, x, y); }));
    }
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return divergence_direct(x, y); }));
  case MeasureId::goude:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return goude(x, y); }));
  case MeasureId::soergel:
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return soergel(x, y); }));
  case MeasureId::ware:
    if (tab) {
      const double* lut = luts->pair()->table.data();
      return fn(make_plain([lut](const Rgb& x, const Rgb& y) { return ware_lut(lut, x, y); }));
    }
    return fn(make_plain([](const Rgb& x, const Rgb& y) { return ware_direct(x, y); }));
  case MeasureId::fms:
    if (tab) {
      const double* lut = luts->pair()->table.data();
      return fn(make_plain([lut](const Rgb& x, const Rgb& y) { return fms_lut(lut, x, y); }));
    }
    return fn(make_plain([K = spec.K](const Rgb& x, const Rgb& y) { return fms(x, y, K); }));
  case MeasureId::fds:
    return fn(FdsScorer(spec.K));
  case MeasureId::fmds:
    if (tab) return fn(FmdsLutScorer(luts->pair()->table.data(), spec.K2));
    return fn(FmdsDirectScorer(spec.K1, spec.K2));
  case MeasureId::cfs:
    if (tab) {
      const double* sp = luts->spatial()->table.data();
      return fn(make_pos([sp, C = spec.C](const Rgb& x, PixelPos px, const Rgb& y, PixelPos py) {
        return cfs_lut(sp, x, px, y, py, C);
      }));
    }
    return fn(make_pos([C = spec.C, t = spec.t](const Rgb& x, PixelPos px, const Rgb& y,
                                                PixelPos py) { return cfs(x, px, y, py, C, t); }));
  }
  throw ConfigError("unknown measure id");
}

// Score type of a scorer: double for most measures, int for the
// integer-valued Minkowski members (whose aggregates stay exact).
template <class Scorer>
using score_t = decltype(std::declval<const Scorer&>().score(0, 0));

// D_i = sum over j of score(x_i, x_j). Symmetry halves the evaluations:
// n(n-1)/2 pair scores plus the n self terms. kN > 0 pins the trip counts
// at compile time for the hot window sizes.
template <int kN = 0, class Scorer>
inline void aggregate_window(const Scorer& s, int n_runtime, score_t<Scorer>* D) {
  using T = score_t<Scorer>;
  const int n = kN > 0 ? kN : n_runtime;
  for (int i = 0; i < n; ++i) D[i] = T(0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const T sc = s.score(i, j);
      D[i] += sc;
      D[j] += sc;
    }
  }
  for (int i = 0; i < n; ++i) D[i] += s.score(i, i);
}

// Shared argmin/argmax with first-wins tie breaking; the NaN guard only
// applies to floating-point scores.
template <int kN = 0, class T>
inline std::size_t select_index(const T* scores, std::size_t n_runtime, Orientation orientation,
                                std::string_view measure_name) {
  const std::size_t n = kN > 0 ? std::size_t(kN) : n_runtime;
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (std::is_floating_point_v<T>) {
      if (std::isnan(scores[i])) {
        throw NumericError("NaN aggregate score" +
                           (measure_name.empty()
                                ? std::string{}
                                : " for measure '" + std::string(measure_name) + "'"));
      }
    }
    if (orientation == Orientation::minimize ? scores[i] < scores[best]
                                             : scores[i] > scores[best]) {
      best = i;
    }
  }
  return best;
}

// Runs body(r0, r1) over [0, rows) split into `threads` contiguous blocks.
template <class Body>
void parallel_rows(int rows, int threads, const Body& body) {
  threads = std::clamp(threads, 1, rows);
  if (threads == 1) {
    body(0, rows);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(std::size_t(threads));
  const int chunk = (rows + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int r0 = t * chunk;
    const int r1 = std::min(rows, r0 + chunk);
    if (r0 >= r1) break;
    workers.emplace_back([&body, r0, r1] { body(r0, r1); });
  }
  for (auto& w : workers) w.join();
}

// Fixed window side known at compile time: the pair loops unroll and the
// score accumulators live in registers, which is what lets the cheap
// integer measures run at their real speed.
template <int kSide, class Scorer>
void filter_rows_fixed(const Image& padded, Image& out, int r0, int r1,
                       Orientation orient, std::string_view label, Scorer s) {
  constexpr int radius = (kSide - 1) / 2;
  constexpr int n = kSide * kSide;
  const int M = out.rows(), N = out.cols();
  Rgb v[n];
  PixelPos pos[n];
  score_t<Scorer> D[n];
  for (int r = r0; r < r1; ++r) {
    for (int c = 0; c < N; ++c) {
      int idx = 0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const Rgb* prow = padded.row(r + radius + dr);
        if constexpr (Scorer::needs_positions) {
          const int pr = std::clamp(r + dr, 0, M - 1);
          for (int dc = -radius; dc <= radius; ++dc, ++idx) {
            v[idx] = prow[c + radius + dc];
            pos[idx] = PixelPos{pr, std::clamp(c + dc, 0, N - 1)};
          }
        } else {
          for (int dc = -radius; dc <= radius; ++dc, ++idx) {
            v[idx] = prow[c + radius + dc];
          }
        }
      }
      s.begin(v, pos, n);
      aggregate_window<n>(s, n, D);
      out.at(r, c) = v[select_index<n>(D, std::size_t(n), orient, label)];
    }
  }
}

template <class Scorer>
void filter_rows_dyn(const Image& padded, Image& out, int r0, int r1, int side,
                     Orientation orient, std::string_view label, Scorer s) {
  const int radius = (side - 1) / 2;
  const int n = side * side;
  const int M = out.rows(), N = out.cols();
  std::vector<Rgb> v(static_cast<std::size_t>(n));
  std::vector<PixelPos> pos;
  if constexpr (Scorer::needs_positions) pos.resize(static_cast<std::size_t>(n));
  std::vector<score_t<Scorer>> D(static_cast<std::size_t>(n));
  for (int r = r0; r < r1; ++r) {
    for (int c = 0; c < N; ++c) {
      int idx = 0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const Rgb* prow = padded.row(r + radius + dr);
        if constexpr (Scorer::needs_positions) {
          const int pr = std::clamp(r + dr, 0, M - 1);
          for (int dc = -radius; dc <= radius; ++dc, ++idx) {
            v[std::size_t(idx)] = prow[c + radius + dc];
            pos[std::size_t(idx)] = PixelPos{pr, std::clamp(c + dc, 0, N - 1)};
          }
        } else {
          for (int dc = -radius; dc <= radius; ++dc, ++idx) {
            v[std::size_t(idx)] = prow[c + radius + dc];
          }
        }
      }
      s.begin(v.data(), pos.data(), n);
      aggregate_window(s, n, D.data());
      out.at(r, c) = v[select_index(D.data(), std::size_t(n), orient, label)];
    }
  }
}

template <class Scorer>
void filter_rows(const Image& padded, Image& out, int r0, int r1, int side,
                 Orientation orient, std::string_view label, Scorer s) {
  switch (side) {
  case 3:
    filter_rows_fixed<3>(padded, out, r0, r1, orient, label, std::move(s));
    return;
  case 5:
    filter_rows_fixed<5>(padded, out, r0, r1, orient, label, std::move(s));
    return;
  default:
    filter_rows_dyn(padded, out, r0, r1, side, orient, label, std::move(s));
    return;
  }
}

template <class MagFn>
void ddf_rows(const Image& padded, Image& out, int r0, int r1, int side,
              std::string_view label, const MagFn& mag) {
  const int radius = (side - 1) / 2;
  const int n = side * side;
  const int N = out.cols();
  std::vector<Rgb> v(static_cast<std::size_t>(n));
  std::vector<double> A(static_cast<std::size_t>(n)), B(static_cast<std::size_t>(n)),
      D(static_cast<std::size_t>(n));
  auto mag_scorer = make_plain(mag);
  auto dir_scorer = make_plain([](const Rgb& x, const Rgb& y) { return detail::cosine(x, y); });
  for (int r = r0; r < r1; ++r) {
    for (int c = 0; c < N; ++c) {
      int idx = 0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const Rgb* prow = padded.row(r + radius + dr);
        for (int dc = -radius; dc <= radius; ++dc, ++idx) {
          v[std::size_t(idx)] = prow[c + radius + dc];
        }
      }
      mag_scorer.begin(v.data(), nullptr, n);
      dir_scorer.begin(v.data(), nullptr, n);
      aggregate_window(mag_scorer, n, A.data());
      aggregate_window(dir_scorer, n, B.data());
      for (int i = 0; i < n; ++i) D[std::size_t(i)] = A[std::size_t(i)] * B[std::size_t(i)];
      out.at(r, c) = v[select_output({D.data(), std::size_t(n)}, Orientation::minimize, label)];
    }
  }
}

template <class MagFn>
void run_ddf(const Image& img, Image& out, int side, int threads, std::string_view label,
             const MagFn& mag) {
  const Image padded = pad_replicate(img, (side - 1) / 2);
  parallel_rows(out.rows(), threads, [&](int r0, int r1) {
    ddf_rows(padded, out, r0, r1, side, label, mag);
  });
}

} // namespace

Orientation FilterSpec::orientation() const {
  switch (kind) {
  case FilterKind::measure: return measure.orientation();
  default: return Orientation::minimize;
  }
}

std::string FilterSpec::label() const {
  switch (kind) {
  case FilterKind::identity: return "none";
  case FilterKind::ddf: {
    if (ddf_p == 2.0) return "ddf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "ddf:p=%g", ddf_p);
    return buf;
  }
  case FilterKind::measure: return format_measure_spec(measure);
  }
  return "?";
}

FilterSpec parse_filter_spec(std::string_view s, int window_side) {
  FilterSpec spec;
  spec.window_side = window_side;
  if (s == "none") {
    spec.kind = FilterKind::identity;
    return spec;
  }
  if (s == "ddf" || s.rfind("ddf:", 0) == 0) {
    spec.kind = FilterKind::ddf;
    if (s.size() > 4) {
      const std::string_view param = s.substr(4);
      if (param.rfind("p=", 0) != 0) {
        throw ConfigError("ddf takes only the parameter 'p', got '" + std::string(param) + "'");
      }
      try {
        spec.ddf_p = std::stod(std::string(param.substr(2)));
      } catch (const std::exception&) {
        throw ConfigError("malformed ddf exponent in '" + std::string(s) + "'");
      }
      if (!(spec.ddf_p >= 1.0)) {
        throw ConfigError("ddf exponent must be >= 1, got '" + std::string(s) + "'");
      }
    }
    return spec;
  }
  spec.kind = FilterKind::measure;
  spec.measure = parse_measure_spec(s);
  return spec;
}

std::vector<FilterSpec> default_filter_set(int window_side) {
  std::vector<FilterSpec> set;
  FilterSpec identity;
  identity.kind = FilterKind::identity;
  identity.window_side = window_side;
  set.push_back(identity);
  for (MeasureId id : kAllMeasures) {
    FilterSpec f;
    f.kind = FilterKind::measure;
    f.measure = make_measure_spec(id);
    f.window_side = window_side;
    set.push_back(f);
  }
  FilterSpec ddf;
  ddf.kind = FilterKind::ddf;
  ddf.window_side = window_side;
  set.push_back(ddf);
  return set;
}

std::vector<double> aggregate_scores(const Window& w, const MeasureSpec& spec,
                                     const LutSet* luts) {
  if (w.positions.size() != w.vectors.size() || int(w.vectors.size()) != w.n) {
    throw std::invalid_argument("malformed window");
  }
  std::vector<double> D(static_cast<std::size_t>(w.n));
  with_scorer(spec, luts, [&](auto s) {
    std::vector<score_t<decltype(s)>> scores(static_cast<std::size_t>(w.n));
    s.begin(w.vectors.data(), w.positions.data(), w.n);
    aggregate_window(s, w.n, scores.data());
    std::copy(scores.begin(), scores.end(), D.begin());
  });
  return D;
}

std::vector<double> ddf_scores(const Window& w, double p) {
  if (!(p >= 1.0)) throw ConfigError("ddf exponent must be >= 1");
  const int n = w.n;
  std::vector<double> A(static_cast<std::size_t>(n)), B(static_cast<std::size_t>(n)),
      D(static_cast<std::size_t>(n));
  auto mag = make_plain([p](const Rgb& x, const Rgb& y) { return detail::minkowski(x, y, p); });
  auto dir = make_plain([](const Rgb& x, const Rgb& y) { return detail::cosine(x, y); });
  mag.begin(w.vectors.data(), nullptr, n);
  dir.begin(w.vectors.data(), nullptr, n);
  aggregate_window(mag, n, A.data());
  aggregate_window(dir, n, B.data());
  for (int i = 0; i < n; ++i) D[std::size_t(i)] = A[std::size_t(i)] * B[std::size_t(i)];
  return D;
}

std::size_t select_output(std::span<const double> scores, Orientation orientation,
                          std::string_view measure_name) {
  if (scores.empty()) throw std::invalid_argument("select_output: empty score vector");
  return select_index(scores.data(), scores.size(), orientation, measure_name);
}

PreparedFilter::PreparedFilter(FilterSpec spec) : spec_(std::move(spec)) {
  window_side(spec_.n());
  if (spec_.kind == FilterKind::measure) {
    luts_ = LutSet::build(spec_.measure, spec_.window_side);
  }
}

Image PreparedFilter::run(const Image& img, int threads) const {
  switch (spec_.kind) {
  case FilterKind::identity:
    return img;
  case FilterKind::ddf: {
    Image out(img.rows(), img.cols());
    const std::string label = spec_.label();
    const double p = spec_.ddf_p;
    if (p == 2.0) {
      run_ddf(img, out, spec_.window_side, threads, label,
              [](const Rgb& x, const Rgb& y) { return detail::d2(x, y); });
    } else if (p == 1.0) {
      run_ddf(img, out, spec_.window_side, threads, label,
              [](const Rgb& x, const Rgb& y) { return detail::d1(x, y); });
    } else {
      run_ddf(img, out, spec_.window_side, threads, label,
              [p](const Rgb& x, const Rgb& y) { return detail::minkowski(x, y, p); });
    }
    return out;
  }
  case FilterKind::measure:
    break;
  }
  if (spec_.measure.id == MeasureId::d2sq && spec_.d2sq_shortcut) {
    return filter_d2sq_shortcut(img, spec_.n(), threads);
  }
  Image out(img.rows(), img.cols());
  const Image padded = pad_replicate(img, (spec_.window_side - 1) / 2);
  const std::string label = spec_.label();
  const Orientation orient = spec_.orientation();
  with_scorer(spec_.measure, &luts_, [&](auto s) {
    parallel_rows(out.rows(), threads, [&](int r0, int r1) {
      filter_rows(padded, out, r0, r1, spec_.window_side, orient, label, s);
    });
  });
  return out;
}

Image filter_image(const Image& img, const FilterSpec& spec, int threads) {
  return PreparedFilter(spec).run(img, threads);
}

Image filter_d2sq_shortcut(const Image& img, int n, int threads) {
  const int side = window_side(n);
  const int radius = (side - 1) / 2;
  Image out(img.rows(), img.cols());
  const Image padded = pad_replicate(img, radius);
  const int N = img.cols();

  parallel_rows(img.rows(), threads, [&](int r0, int r1) {
    std::vector<Rgb> v(static_cast<std::size_t>(n));
    for (int r = r0; r < r1; ++r) {
      for (int c = 0; c < N; ++c) {
        int idx = 0;
        std::int64_t sum[3] = {0, 0, 0};
        for (int dr = -radius; dr <= radius; ++dr) {
          const Rgb* prow = padded.row(r + radius + dr);
          for (int dc = -radius; dc <= radius; ++dc, ++idx) {
            const Rgb& px = prow[c + radius + dc];
            v[std::size_t(idx)] = px;
            sum[0] += px.k[0];
            sum[1] += px.k[1];
            sum[2] += px.k[2];
          }
        }
        // argmin_i d2sq(x_i, mean) compared as ||n*x_i - sum||^2, which is
        // n^2 times the distance to the mean: exact in integers, so the
        // selection (ties included) matches the aggregate-d2sq engine.
        std::size_t best = 0;
        std::int64_t best_score = -1;
        for (int i = 0; i < n; ++i) {
          const Rgb& x = v[std::size_t(i)];
          const std::int64_t a = std::int64_t(n) * x.k[0] - sum[0];
          const std::int64_t b = std::int64_t(n) * x.k[1] - sum[1];
          const std::int64_t d = std::int64_t(n) * x.k[2] - sum[2];
          const std::int64_t score = a * a + b * b + d * d;
          if (best_score < 0 || score < best_score) {
            best_score = score;
            best = std::size_t(i);
          }
        }
        out.at(r, c) = v[best];
      }
    }
  });
  return out;
}

} // namespace vecfilt
