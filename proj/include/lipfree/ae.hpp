// Copyright 2026 The lipfree Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bounds on the absolute extendability constant ae(X) of a finite metric
// space.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/free_space.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/polyspace.hpp"
#include "lipfree/projconst.hpp"

namespace lipfree {

template <Scalar T>
struct LowerBound {
  T value;
  DistanceMatrix<T> witness;
  std::string route;
  bool exact_for_x = false;
};

template <Scalar T>
struct UpperBound {
  T value;
  std::string method;
};

template <Scalar T>
struct AeReport {
  DistanceMatrix<T> space;
  std::vector<LowerBound<T>> lower_bounds;
  std::vector<UpperBound<T>> upper_bounds;
  T best_lower{1};
  T best_upper{0};
  std::vector<std::string> notes;

  void add_lower(LowerBound<T> b) {
    if (lower_bounds.empty() || best_lower < b.value) best_lower = b.value;
    lower_bounds.push_back(std::move(b));
  }
  void add_upper(UpperBound<T> b) {
    if (upper_bounds.empty() || b.value < best_upper) best_upper = b.value;
    upper_bounds.push_back(std::move(b));
  }
};

/// lambda_Lip(X, Y), a lower bound for ae(X).
template <Scalar T>
T ae_lower(const PointedSpace<T>& x, const PointedSpace<T>& y, const SolveOptions& so = {}) {
  return lambda_lip(x, y, so).value;
}

/// lambda(F(X)) through the isometric image of F(X) in l_inf^q, an upper
/// bound for ae(X).
template <Scalar T>
ProjConstResult<T> ae_upper_absolute_result(const PointedSpace<T>& x, std::size_t cap = kDefaultBallCap,
                                            const SolveOptions& so = {}) {
  auto ball = lipschitz_ball(x, cap);
  Matrix<T> emb = embed_linf(ball);
  SubspaceBasis<T> e(PolyhedralSpace<T>::linf(emb.rows()), emb);
  RouteAOptions opt;
  opt.mode = VertexMode::Compact;
  opt.lp = so;
  return lambda_subspace(e, opt);
}

template <Scalar T>
T ae_upper_absolute(const PointedSpace<T>& x, std::size_t cap = kDefaultBallCap, const SolveOptions& so = {}) {
  return ae_upper_absolute_result(x, cap, so).value;
}

/// 2 (1 - 1/n) diam / sep.
template <Scalar T>
T sep_diam_upper(const DistanceMatrix<T>& x) {
  auto ds = diam_sep(x);
  const long n = static_cast<long>(x.size());
  return T(2) * (T(1) - T(1) / T(n)) * ds.diam / ds.sep;
}

/// n/d + sqrt((d-1)(n/d)(1-n/d)).
template <Scalar T>
T klb_bound(std::size_t n, std::size_t d) {
  if (n < 1 || n > d) throw Error(Errc::BadDimensions, "klb bound needs 1 <= n <= d");
  T r = T(static_cast<long>(n)) / T(static_cast<long>(d));
  T rad = T(static_cast<long>(d - 1)) * r * (T(1) - r);
  return r + exact_sqrt(rad);
}

template <Scalar T>
T kadets_snobar(std::size_t n) {
  if (n < 1) throw Error(Errc::BadDimensions, "dimension must be positive");
  return exact_sqrt(T(static_cast<long>(n)));
}

/// lambda(l_1^n) for odd n = 2k+1: n C(2k, k) / 4^k.
template <Scalar T>
T grunbaum_l1(std::size_t n) {
  if (n % 2 == 0 || n == 0) throw Error(Errc::BadDimensions, "closed form needs odd n");
  std::size_t k = (n - 1) / 2;
  T v(static_cast<long>(n));
  for (std::size_t i = 1; i <= k; ++i) v = v * T(static_cast<long>(k + i)) / T(static_cast<long>(4 * i));
  return v;
}

template <Scalar T>
struct KnownConstant {
  std::string name;
  std::optional<T> value;  // nullopt when the field cannot represent it
  std::string description;
};

template <Scalar T>
std::vector<KnownConstant<T>> known_constants(std::size_t max_d = 6) {
  std::vector<KnownConstant<T>> out;
  auto maybe = [](auto f) -> std::optional<T> {
    try {
      return f();
    } catch (const Error& e) {
      if (e.code() != Errc::FieldUnsupported) throw;
      return std::nullopt;
    }
  };
  out.push_back({"lambda_1", T(1), "maximal projection constant in dimension 1"});
  out.push_back({"lambda_2", T(4, 3), "maximal projection constant in dimension 2"});
  out.push_back({"lambda(3,5)", maybe([] { return (T(5) + T(4) * sqrt2_value<T>()) / T(7); }),
                 "maximal relative projection constant of 3-dimensional subspaces of l_inf^5"});
  for (std::size_t d = 2; d <= max_d; ++d)
    out.push_back({"lambda(" + std::to_string(d - 1) + "," + std::to_string(d) + ")",
                   T(2) - T(2) / T(static_cast<long>(d)), "hyperplanes of l_inf^d"});
  for (std::size_t n = 1; n <= 7; n += 2)
    out.push_back({"lambda(l1^" + std::to_string(n) + ")", grunbaum_l1<T>(n), "absolute projection constant of l_1^n"});
  return out;
}

namespace detail {

// X is itself a weighted tree: a realization without Steiner points.
template <Scalar T>
bool is_tree_metric(const DistanceMatrix<T>& x) {
  auto t = detect_tree(x);
  return t && t->size() == x.size();
}

}  // namespace detail

/// Bounds for a four-point space; the hull-superspace lower bound equals
/// ae(X).
template <Scalar T>
AeReport<T> ae4_pipeline(const DistanceMatrix<T>& x, const SolveOptions& so = {}) {
  if (x.size() != 4) throw Error(Errc::InvalidSize, "ae4 pipeline needs exactly four points");
  AeReport<T> rep;
  rep.space = x;
  PointedSpace<T> px(x, 0);
  auto hull = injective_hull_superspace(x);
  PointedSpace<T> py(hull.space, hull.x_indices[0]);
  auto lb = lambda_lip(px, py, so);
  rep.add_lower({lb.value, hull.space, "B", true});
  rep.notes.push_back("lower bound over the injective-hull superspace equals ae(X)");

  rep.add_upper({ae_upper_absolute(px, kDefaultBallCap, so), "absolute projection constant of F(X)"});
  try {
    rep.add_upper({klb_bound<T>(3, hull.space.size() - 1), "klb(3," + std::to_string(hull.space.size() - 1) + ")"});
  } catch (const Error& e) {
    if (e.code() != Errc::FieldUnsupported) throw;
    rep.notes.push_back("klb bound not representable in this field");
  }
  rep.add_upper({sep_diam_upper(x), "sep/diam"});
  if (detail::is_tree_metric(x)) rep.notes.push_back("X is a weighted tree: ae(X) = 1");
  if (!detail::at_most(rep.best_lower, rep.best_upper, so.tolerance))
    throw Error(Errc::AssertionFailed, "lower bound exceeds upper bound");
  return rep;
}

/// Bounds for any X: n = 4 delegates to ae4_pipeline; otherwise the
/// identity lower bound, the n-pod superspace for equilateral X, and the
/// absolute and sep/diam upper bounds.
template <Scalar T>
AeReport<T> ae_report(const DistanceMatrix<T>& x, const SolveOptions& so = {}, std::size_t cap = kDefaultBallCap) {
  if (x.size() == 4) return ae4_pipeline(x, so);
  AeReport<T> rep;
  rep.space = x;
  PointedSpace<T> px(x, 0);
  rep.add_lower({T(1), x, "identity", x.size() <= 2});
  auto ds = diam_sep(x);
  if (x.size() >= 3 && ds.diam == ds.sep) {
    auto pod = npod<T>(x.size(), ds.diam / T(2));
    std::vector<std::string> labels = pod.space.labels();
    for (std::size_t i = 0; i < x.size(); ++i) labels[pod.leaves[i]] = x.label(i);
    DistanceMatrix<T> y = DistanceMatrix<T>::validate(pod.space.matrix(), labels);
    rep.add_lower({lambda_lip(px, PointedSpace<T>(y, pod.leaves[0]), so).value, y, "B", true});
    rep.notes.push_back("equilateral: the n-pod superspace attains ae(X)");
  }
  try {
    rep.add_upper({ae_upper_absolute(px, cap, so), "absolute projection constant of F(X)"});
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge) throw;
    rep.notes.push_back("absolute projection constant skipped: Lipschitz ball above the vertex cap");
  }
  rep.add_upper({sep_diam_upper(x), "sep/diam"});
  if (detail::is_tree_metric(x)) rep.notes.push_back("X is a weighted tree: ae(X) = 1");
  if (!detail::at_most(rep.best_lower, rep.best_upper, so.tolerance))
    throw Error(Errc::AssertionFailed, "lower bound exceeds upper bound");
  return rep;
}

/// The rectangle X0 = {(+-a, +-1)} in l_inf^2, a = 1/sqrt2 + 1/2, and with
/// with_y its superset Y0 adding y1 = (-b, 0), y2 = (b, 0), b = 1/sqrt2 - 1/2.
template <Scalar T>
DistanceMatrix<T> ae4_rectangle(bool with_y = false) {
  T r2 = sqrt2_value<T>();
  T h = T(1) / T(2);
  T a = T(1) / r2 + h, b = T(1) / r2 - h;
  std::vector<Vec<T>> pts{{-a, T(-1)}, {-a, T(1)}, {a, T(1)}, {a, T(-1)}};
  std::vector<std::string> labels{"x1", "x2", "x3", "x4"};
  if (with_y) {
    pts.push_back({-b, T(0)});
    pts.push_back({b, T(0)});
    labels.push_back("y1");
    labels.push_back("y2");
  }
  return linf_metric(pts, labels);
}

// ---------------------------------------------------------------------------
// Search inside the injective hull (float mode)

/// A point of E(X) in l_1-plane coordinates: anchor z in the rectangle plus
/// an offset s along leg `leg` (leg = -1 for rectangle points).
struct HullPoint {
  double zx = 0, zy = 0;
  double s = 0;
  int leg = -1;
};

struct HullModel {
  std::array<double, 4> legs{};
  double ell = 0, w = 0;
  std::array<std::array<double, 2>, 4> corner{};  // normal-form corners
  std::array<std::size_t, 4> nf_of{};             // original index -> normal-form index

  HullPoint x_point(std::size_t i) const {
    auto c = nf_of[i];
    return {corner[c][0], corner[c][1], legs[c], static_cast<int>(c)};
  }

  static double dist(const HullPoint& a, const HullPoint& b) {
    if (a.leg >= 0 && a.leg == b.leg) return std::fabs(a.s - b.s);
    return a.s + std::fabs(a.zx - b.zx) + std::fabs(a.zy - b.zy) + b.s;
  }

  HullPoint clamp(HullPoint p) const {
    if (p.leg >= 0) {
      auto c = static_cast<std::size_t>(p.leg);
      p.zx = corner[c][0];
      p.zy = corner[c][1];
      p.s = std::clamp(p.s, 0.0, legs[c]);
    } else {
      p.zx = std::clamp(p.zx, 0.0, ell);
      p.zy = std::clamp(p.zy, 0.0, w);
      p.s = 0;
    }
    return p;
  }
};

template <Scalar T>
HullModel hull_model(const DistanceMatrix<T>& x) {
  auto p = four_point_params(x);
  HullModel m;
  auto legs = p.legs();
  for (std::size_t i = 0; i < 4; ++i) m.legs[i] = to_double(legs[i]);
  m.ell = to_double(p.ell);
  m.w = to_double(p.w);
  m.corner = {{{0, 0}, {m.ell, 0}, {m.ell, m.w}, {0, m.w}}};
  for (std::size_t i = 0; i < 4; ++i) m.nf_of[p.relabeling[i]] = i;
  return m;
}

struct SearchResult {
  double value = 1;
  DistanceMatrix<Float> witness;
  std::vector<HullPoint> points;
  std::size_t evaluations = 0;
};

struct SearchOptions {
  std::size_t extra_points = 2;
  std::size_t budget = 200;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
};

namespace detail {

// Distance matrix of X followed by the candidate points, or nullopt when a
// candidate coincides with an earlier point.
inline std::optional<DistanceMatrix<Float>> superspace(const DistanceMatrix<Float>& x, const HullModel& m,
                                                       const std::vector<HullPoint>& pts) {
  std::vector<HullPoint> all;
  for (std::size_t i = 0; i < 4; ++i) all.push_back(m.x_point(i));
  for (const auto& p : pts) all.push_back(p);
  const std::size_t n = all.size();
  Matrix<Float> d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = i < 4 && j < 4 ? x(i, j) : Float(HullModel::dist(all[i], all[j]));
      if (sgn(d(i, j)) <= 0) return std::nullopt;
    }
  auto labels = x.labels();
  for (std::size_t k = 0; k < pts.size(); ++k) labels.push_back("z" + std::to_string(k + 1));
  try {
    return DistanceMatrix<Float>::validate(std::move(d), std::move(labels));
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline double evaluate(const DistanceMatrix<Float>& x, const HullModel& m, const std::vector<HullPoint>& pts,
                       const SolveOptions& so) {
  auto y = superspace(x, m, pts);
  if (!y) return 0;
  try {
    return to_double(lambda_lip(PointedSpace<Float>(x, 0), PointedSpace<Float>(*y, 0), so).value);
  } catch (const Error&) {
    return 0;
  }
}

// Evaluates candidates on a worker pool; results keep candidate order.
inline std::vector<double> evaluate_all(const DistanceMatrix<Float>& x, const HullModel& m,
                                        const std::vector<std::vector<HullPoint>>& cands, const SolveOptions& so,
                                        std::size_t threads) {
  std::vector<double> out(cands.size(), 0);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, cands.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < cands.size(); ++i) out[i] = evaluate(x, m, cands[i], so);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < cands.size(); i += threads) out[i] = evaluate(x, m, cands[i], so);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace detail

/// Best lambda_Lip(X, X u Z) found over sets Z of extra points in E(X).
/// Seeds with the hull corners, then random samples, then coordinate
/// refinement. Deterministic for a fixed seed.
inline SearchResult search_lower_bound(const DistanceMatrix<Float>& x, const SearchOptions& opt,
                                       const SolveOptions& so = {}) {
  if (x.size() != 4) throw Error(Errc::InvalidSize, "search needs exactly four points");
  if (opt.extra_points < 1) throw Error(Errc::InvalidSize, "search needs at least one extra point");
  HullModel m = hull_model(x);
  SearchResult best;
  best.witness = x;
  best.value = 1;
  if (opt.budget == 0) {
    best.value = to_double(lambda_lip(PointedSpace<Float>(x, 0), PointedSpace<Float>(x, 0), so).value);
    return best;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_point = [&] {
    HullPoint p;
    double total = m.ell * m.w > 0 ? 1.0 : 0.0;
    double legsum = m.legs[0] + m.legs[1] + m.legs[2] + m.legs[3];
    if (legsum > 0 && (total == 0 || unit(rng) < 0.5)) {
      double r = unit(rng) * legsum;
      int c = 0;
      while (c < 3 && r > m.legs[static_cast<std::size_t>(c)]) r -= m.legs[static_cast<std::size_t>(c++)];
      p.leg = c;
      p.s = unit(rng) * m.legs[static_cast<std::size_t>(c)];
    } else {
      p.zx = unit(rng) * m.ell;
      p.zy = unit(rng) * m.w;
    }
    return m.clamp(p);
  };

  std::vector<HullPoint> corners;
  for (std::size_t c = 0; c < 4; ++c) corners.push_back(m.clamp({m.corner[c][0], m.corner[c][1], 0, -1}));

  std::vector<std::vector<HullPoint>> cands;
  // Corner subsets of size extra_points (distinct corners), padded randomly.
  const std::size_t k = opt.extra_points;
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<HullPoint> pts;
    for (std::size_t c = 0; c < 4; ++c)
      if (mask & (1U << c)) pts.push_back(corners[c]);
    if (pts.size() > k) continue;
    while (pts.size() < k) pts.push_back(random_point());
    cands.push_back(std::move(pts));
  }
  for (int r = 0; r < 16; ++r) {
    std::vector<HullPoint> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back(random_point());
    cands.push_back(std::move(pts));
  }
  if (cands.size() > opt.budget) cands.resize(opt.budget);

  auto consider = [&](const std::vector<std::vector<HullPoint>>& batch) {
    auto vals = detail::evaluate_all(x, m, batch, so, opt.threads);
    best.evaluations += batch.size();
    bool improved = false;
    for (std::size_t i = 0; i < batch.size(); ++i)
      if (vals[i] > best.value + 1e-12) {
        best.value = vals[i];
        best.points = batch[i];
        improved = true;
      }
    return improved;
  };
  consider(cands);

  double step = 0.25 * std::max({m.ell, m.w, m.legs[0], m.legs[1], m.legs[2], m.legs[3], 1e-3});
  while (best.evaluations < opt.budget && step > 1e-7 && !best.points.empty()) {
    std::vector<std::vector<HullPoint>> batch;
    for (std::size_t i = 0; i < best.points.size(); ++i)
      for (int dir = 0; dir < 4; ++dir) {
        auto pts = best.points;
        auto& p = pts[i];
        double delta = dir % 2 ? -step : step;
        if (p.leg >= 0) {
          if (dir >= 2) continue;
          p.s += delta;
        } else if (dir < 2) {
          p.zx += delta;
        } else {
          p.zy += delta;
        }
        p = m.clamp(p);
        batch.push_back(std::move(pts));
      }
    if (batch.size() > opt.budget - best.evaluations) batch.resize(opt.budget - best.evaluations);
    if (batch.empty() || !consider(batch)) step *= 0.5;
  }
  if (!best.points.empty()) best.witness = *detail::superspace(x, m, best.points);
  return best;
}

}  // namespace lipfree
