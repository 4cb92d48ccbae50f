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

// Lipschitz-free spaces over finite pointed metric spaces.
//
// Coordinates are taken on the delta basis {delta(x) : x != p}; coordinate k
// refers to point PointedSpace::coord_points()[k]. Lipschitz functionals
// vanishing at p use the same indexing.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/lp.hpp"
#include "lipfree/matrix.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/polytope.hpp"

namespace lipfree {

template <Scalar T>
using FreeVector = Vec<T>;

template <Scalar T>
FreeVector<T> delta(const PointedSpace<T>& x, std::size_t point) {
  if (point >= x.size()) throw Error(Errc::InvalidSize, "point index out of range", {point});
  FreeVector<T> v(x.dim(), T(0));
  if (auto c = x.coord_of(point)) v[*c] = T(1);
  return v;
}

/// (delta(a) - delta(b)) / d(a, b).
template <Scalar T>
FreeVector<T> molecule(const PointedSpace<T>& x, std::size_t a, std::size_t b) {
  if (a == b) throw Error(Errc::SamePoint, "molecule needs two distinct points", {a, b});
  FreeVector<T> v = delta(x, a);
  FreeVector<T> w = delta(x, b);
  T inv = T(1) / x.space(a, b);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] - w[k]) * inv;
  return v;
}

inline constexpr std::size_t kDefaultBallCap = 8;

/// Unit ball of Lip_0(X): rows of `a` are f(x) - f(y) <= d(x, y) for both
/// orientations of each unordered pair (row 2k is x - y, row 2k+1 is y - x
/// for pairs[k] = (x, y)).
template <Scalar T>
struct LipschitzBall {
  PointedSpace<T> base;
  Matrix<T> a;
  Vec<T> b;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Vec<T>> vertices;

  std::size_t dim() const { return base.dim(); }
};

template <Scalar T>
LipschitzBall<T> lipschitz_hrep(const PointedSpace<T>& x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(Errc::SinglePoint, "Lipschitz ball needs at least two points");
  LipschitzBall<T> ball;
  ball.base = x;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ball.pairs.push_back({i, j});
  ball.a = Matrix<T>(2 * ball.pairs.size(), x.dim());
  ball.b.resize(2 * ball.pairs.size());
  for (std::size_t k = 0; k < ball.pairs.size(); ++k) {
    auto [i, j] = ball.pairs[k];
    auto ci = x.coord_of(i), cj = x.coord_of(j);
    if (ci) {
      ball.a(2 * k, *ci) = T(1);
      ball.a(2 * k + 1, *ci) = T(-1);
    }
    if (cj) {
      ball.a(2 * k, *cj) = T(-1);
      ball.a(2 * k + 1, *cj) = T(1);
    }
    ball.b[2 * k] = ball.b[2 * k + 1] = x.space(i, j);
  }
  return ball;
}

/// Checks that v is a vertex of the ball: feasible and with tight rows of
/// full rank. Float runs compare slacks at ten times the field tolerance.
template <Scalar T>
bool is_ball_vertex(const LipschitzBall<T>& ball, const Vec<T>& v) {
  auto near_zero = [](const T& s) {
    if constexpr (is_exact_v<T>) return is_zero(s);
    else return std::fabs(to_double(s)) <= 10 * float_tolerance();
  };
  std::vector<std::size_t> tight;
  for (std::size_t i = 0; i < ball.a.rows(); ++i) {
    T slack = ball.b[i] - dot<T>(ball.a.row(i), std::span<const T>(v));
    if (near_zero(slack)) tight.push_back(i);
    else if (sgn(slack) < 0) return false;
  }
  Matrix<T> t(tight.size(), ball.dim());
  for (std::size_t r = 0; r < tight.size(); ++r)
    for (std::size_t k = 0; k < ball.dim(); ++k) t(r, k) = ball.a(tight[r], k);
  return rank(t) == ball.dim();
}

/// H-representation plus exact vertex enumeration, in lexicographic order.
template <Scalar T>
LipschitzBall<T> lipschitz_ball(const PointedSpace<T>& x, std::size_t cap = kDefaultBallCap) {
  if (x.size() > cap)
    throw Error(Errc::TooLarge, "Lipschitz ball enumeration capped at " + std::to_string(cap) + " points");
  LipschitzBall<T> ball = lipschitz_hrep(x);
  ball.vertices = enumerate_vertices(ball.a, ball.b);
  for (const auto& v : ball.vertices)
    if (!is_ball_vertex(ball, v)) throw Error(Errc::NumericFailure, "enumerated point is not a ball vertex");
  for (const auto& v : ball.vertices) {
    Vec<T> neg = v;
    for (auto& c : neg) c = -c;
    if (!std::binary_search(ball.vertices.begin(), ball.vertices.end(), neg, lex_less<T>))
      throw Error(Errc::NumericFailure, "vertex set is not symmetric");
  }
  return ball;
}

/// F(X) norm by duality: max over ball vertices of <f, mu>.
template <Scalar T>
T free_norm(const LipschitzBall<T>& ball, const FreeVector<T>& mu) {
  if (mu.size() != ball.dim()) throw Error(Errc::DimensionMismatch, "free vector length");
  T best(0);
  for (const auto& v : ball.vertices) best = max_of(best, dot(v, mu));
  return best;
}

/// F(X) norm as an LP over the H-representation.
template <Scalar T>
T free_norm_lp(const PointedSpace<T>& x, const FreeVector<T>& mu) {
  if (mu.size() != x.dim()) throw Error(Errc::DimensionMismatch, "free vector length");
  auto h = lipschitz_hrep(x);
  LpProblem<T> p;
  p.sense = Sense::Maximize;
  for (std::size_t k = 0; k < x.dim(); ++k) p.add_variable(mu[k], true);
  for (std::size_t i = 0; i < h.a.rows(); ++i) {
    SparseRow<T> r;
    for (std::size_t k = 0; k < x.dim(); ++k)
      if (!is_zero(h.a(i, k))) r.push_back({k, h.a(i, k)});
    p.add_row(std::move(r), RowKind::Le, h.b[i]);
  }
  return solve(p).objective;
}

/// Rows are one representative of each +-pair of ball vertices (the first
/// seen in lexicographic order); mu -> matrix * mu is an isometry into l_inf^q.
template <Scalar T>
Matrix<T> embed_linf(const LipschitzBall<T>& ball) {
  const auto& vs = ball.vertices;
  if (vs.size() % 2 != 0) throw Error(Errc::OddVertexCount, "ball has an odd number of vertices");
  std::vector<bool> used(vs.size(), false);
  std::vector<Vec<T>> rows;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (used[i]) continue;
    Vec<T> neg = vs[i];
    for (auto& c : neg) c = -c;
    auto it = std::lower_bound(vs.begin(), vs.end(), neg, lex_less<T>);
    if (it == vs.end() || !(*it == neg)) throw Error(Errc::OddVertexCount, "vertex without antipode");
    used[i] = true;
    used[static_cast<std::size_t>(it - vs.begin())] = true;
    rows.push_back(vs[i]);
  }
  Matrix<T> m(rows.size(), ball.dim());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < ball.dim(); ++k) m(i, k) = rows[i][k];
  return m;
}

/// Edge indices sorted by (min endpoint label, max endpoint label).
template <Scalar T>
std::vector<std::size_t> default_edge_order(const WeightedTree<T>& tree) {
  std::vector<std::size_t> order(tree.edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto key = [&](std::size_t k) {
    const auto& a = tree.vertices[tree.edges[k].u];
    const auto& b = tree.vertices[tree.edges[k].v];
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
  return order;
}

/// Pointed space of all tree vertices with the tree's basepoint.
template <Scalar T>
PointedSpace<T> tree_space(const WeightedTree<T>& tree) {
  return PointedSpace<T>(tree_metric(tree), tree.basepoint);
}

/// N x (n-1) matrix of the isometry F(T) -> l_1^N: column of point x has
/// sign_i * w_i in row i for every edge i on the path from the basepoint to x.
/// Row i corresponds to edge edge_order[i].
template <Scalar T>
Matrix<T> tree_isometry(const WeightedTree<T>& tree, std::vector<int> signs = {},
                        std::vector<std::size_t> edge_order = {}) {
  tree.check();
  const std::size_t ne = tree.edges.size();
  if (edge_order.empty()) edge_order = default_edge_order(tree);
  if (signs.empty()) signs.assign(ne, 1);
  if (edge_order.size() != ne || signs.size() != ne) throw Error(Errc::DimensionMismatch, "edge order/sign count");
  std::vector<std::size_t> row_of(ne, ne);
  for (std::size_t r = 0; r < ne; ++r) {
    if (edge_order[r] >= ne || row_of[edge_order[r]] != ne) throw Error(Errc::NotATree, "edge order is not a permutation");
    row_of[edge_order[r]] = r;
  }
  PointedSpace<T> ps(tree_metric(tree), tree.basepoint);
  Matrix<T> m(ne, ps.dim());
  for (auto x : ps.coord_points()) {
    std::size_t c = *ps.coord_of(x);
    for (auto e : tree.path_edges(tree.basepoint, x)) {
      std::size_t r = row_of[e];
      if (signs[r] != 1 && signs[r] != -1) throw Error(Errc::DimensionMismatch, "edge signs must be +-1");
      m(r, c) = signs[r] > 0 ? tree.edges[e].weight : -tree.edges[e].weight;
    }
  }
  return m;
}

/// For each point of x, its index in y (matched by label and checked for
/// equal distances).
template <Scalar T>
std::vector<std::size_t> subset_indices(const PointedSpace<T>& x, const PointedSpace<T>& y) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto j = y.space.index_of(x.space.label(i));
    if (!j) throw Error(Errc::NotASubset, "point '" + x.space.label(i) + "' missing from superspace", {i});
    idx.push_back(*j);
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!(x.space(i, k) == y.space(idx[i], idx[k])))
        throw Error(Errc::NotASubset, "distances differ between subspace and superspace", {i, k});
  if (idx[x.basepoint] != y.basepoint) throw Error(Errc::BasepointMismatch, "basepoints differ");
  return idx;
}

/// (|Y|-1) x (|X|-1) 0/1 matrix sending delta_X(x) to delta_Y(x).
template <Scalar T>
Matrix<T> inclusion_matrix(const PointedSpace<T>& x, const PointedSpace<T>& y) {
  auto idx = subset_indices(x, y);
  Matrix<T> m(y.dim(), x.dim());
  for (auto p : x.coord_points()) m(*y.coord_of(idx[p]), *x.coord_of(p)) = T(1);
  return m;
}

}  // namespace lipfree
