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

// Finite metric spaces: validation, standard constructions (equilateral
// spaces, n-pods, the eight-point hull superspace of a four-point space),
// and weighted trees.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/matrix.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

inline std::vector<std::string> default_labels(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

/// A validated finite metric space. Instances only come out of validate()
/// (or constructors built on it), so every held matrix is a metric.
template <Scalar T>
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  static DistanceMatrix validate(Matrix<T> raw, std::vector<std::string> labels = {}) {
    if (!raw.square()) throw Error(Errc::NotSquare, "distance matrix must be square");
    const std::size_t n = raw.rows();
    if (labels.empty()) labels = default_labels(n);
    if (labels.size() != n) throw Error(Errc::DimensionMismatch, "label count differs from point count");
    for (std::size_t i = 0; i < n; ++i)
      if (!is_zero(raw(i, i)))
        throw Error(Errc::NonzeroDiagonal, "d(" + labels[i] + "," + labels[i] + ") != 0", {i});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(raw(i, j) == raw(j, i)))
          throw Error(Errc::NotSymmetric, "d(" + labels[i] + "," + labels[j] + ") != d(" + labels[j] + "," + labels[i] + ")",
                      {i, j});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (sgn(raw(i, j)) <= 0)
          throw Error(Errc::NonPositiveDistance, "d(" + labels[i] + "," + labels[j] + ") <= 0", {i, j});
    // Reported as (i, k, j): d(i, k) > d(i, j) + d(j, k).
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          if (raw(i, j) + raw(j, k) < raw(i, k))
            throw Error(Errc::TriangleViolation,
                        "d(" + labels[i] + "," + labels[k] + ") > d(" + labels[i] + "," + labels[j] + ") + d(" +
                            labels[j] + "," + labels[k] + ")",
                        {i, k, j});
        }
    DistanceMatrix dm;
    dm.d_ = std::move(raw);
    dm.labels_ = std::move(labels);
    return dm;
  }

  std::size_t size() const { return d_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
  const Matrix<T>& matrix() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  /// Subspace on the given points, in the given order.
  DistanceMatrix restrict_to(const std::vector<std::size_t>& idx) const {
    Matrix<T> m(idx.size(), idx.size());
    std::vector<std::string> l;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      l.push_back(labels_.at(idx[a]));
      for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = d_(idx[a], idx[b]);
    }
    return validate(std::move(m), std::move(l));
  }

  /// Point i of the result is point perm[i] of this space.
  DistanceMatrix permuted(const std::vector<std::size_t>& perm) const { return restrict_to(perm); }

  DistanceMatrix scaled(const T& t) const {
    if (sgn(t) <= 0) throw Error(Errc::NonPositiveDistance, "scale factor must be positive");
    return validate(d_ * t, labels_);
  }

 private:
  Matrix<T> d_;
  std::vector<std::string> labels_;
};

template <Scalar T>
struct PointedSpace {
  DistanceMatrix<T> space;
  std::size_t basepoint = 0;

  PointedSpace() = default;
  PointedSpace(DistanceMatrix<T> s, std::size_t p) : space(std::move(s)), basepoint(p) {
    if (basepoint >= space.size()) throw Error(Errc::InvalidSize, "basepoint index out of range", {p});
  }

  std::size_t size() const { return space.size(); }
  std::size_t dim() const { return space.size() - 1; }

  /// Points other than the basepoint, in index order; coordinate k of a
  /// free-space vector refers to point coord_points()[k].
  std::vector<std::size_t> coord_points() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space.size(); ++i)
      if (i != basepoint) out.push_back(i);
    return out;
  }

  /// Coordinate index of point x, or nullopt for the basepoint.
  std::optional<std::size_t> coord_of(std::size_t x) const {
    if (x == basepoint) return std::nullopt;
    return x < basepoint ? x : x - 1;
  }
};

template <Scalar T>
struct DiamSep {
  T diam;
  T sep;
};

template <Scalar T>
DiamSep<T> diam_sep(const DistanceMatrix<T>& x) {
  if (x.size() < 2) throw Error(Errc::SinglePoint, "diam/sep need at least two points");
  DiamSep<T> r{x(0, 1), x(0, 1)};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (r.diam < x(i, j)) r.diam = x(i, j);
      if (x(i, j) < r.sep) r.sep = x(i, j);
    }
  return r;
}

template <Scalar T>
DistanceMatrix<T> equilateral(std::size_t n, const T& s) {
  if (n < 2) throw Error(Errc::InvalidSize, "equilateral space needs n >= 2");
  if (sgn(s) <= 0) throw Error(Errc::InvalidSize, "side length must be positive");
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m(i, j) = s;
  return DistanceMatrix<T>::validate(std::move(m));
}

template <Scalar T>
struct NPod {
  DistanceMatrix<T> space;  // leaves x1..xn followed by the center o
  std::vector<std::size_t> leaves;
  std::size_t center;
};

/// Star with n legs of length c: leaves pairwise 2c apart, center at c.
template <Scalar T>
NPod<T> npod(std::size_t n, const T& c) {
  if (n < 2) throw Error(Errc::InvalidSize, "n-pod needs n >= 2");
  if (sgn(c) <= 0) throw Error(Errc::InvalidSize, "leg length must be positive");
  Matrix<T> m(n + 1, n + 1);
  T two_c = c + c;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m(i, j) = two_c;
    m(i, n) = c;
    m(n, i) = c;
  }
  auto labels = default_labels(n);
  labels.push_back("o");
  NPod<T> pod{DistanceMatrix<T>::validate(std::move(m), std::move(labels)), {}, n};
  pod.leaves.resize(n);
  std::iota(pod.leaves.begin(), pod.leaves.end(), std::size_t{0});
  return pod;
}

/// Metric of points in (R^k, sup norm).
template <Scalar T>
DistanceMatrix<T> linf_metric(const std::vector<Vec<T>>& pts, std::vector<std::string> labels = {}) {
  const std::size_t n = pts.size();
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T best(0);
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        T diff = abs(pts[i][k] - pts[j][k]);
        if (best < diff) best = diff;
      }
      m(i, j) = best;
    }
  return DistanceMatrix<T>::validate(std::move(m), std::move(labels));
}

// ---------------------------------------------------------------------------
// Four-point decomposition

/// Parameters of a four-point metric in the rectangle-plus-legs normal form:
/// after relabeling (point i of the normal form is original point
/// relabeling[i]),
///
///   d12 = a+l+b     d13 = a+l+w+c   d14 = a+w+d
///   d23 = b+w+c     d24 = b+l+w+d   d34 = c+l+d
///
/// with legs a, b, c, d >= 0 and l >= w >= 0.
template <Scalar T>
struct FourPointParams {
  std::array<std::size_t, 4> relabeling{0, 1, 2, 3};
  T a, b, c, d;
  T ell, w;

  std::array<T, 4> legs() const { return {a, b, c, d}; }

  /// Distance between normal-form points i and j (zero-based).
  Matrix<T> normal_form() const {
    Matrix<T> m(4, 4);
    auto set = [&m](std::size_t i, std::size_t j, const T& v) {
      m(i, j) = v;
      m(j, i) = v;
    };
    set(0, 1, a + ell + b);
    set(0, 2, a + ell + w + c);
    set(0, 3, a + w + d);
    set(1, 2, b + w + c);
    set(1, 3, b + ell + w + d);
    set(2, 3, c + ell + d);
    return m;
  }
};

/// Chooses the first relabeling (lexicographic over permutations) with
/// S1 = d13+d24 >= S2 = d12+d34 >= S3 = d14+d23, then solves for the legs.
template <Scalar T>
FourPointParams<T> four_point_params(const DistanceMatrix<T>& x) {
  if (x.size() != 4) throw Error(Errc::InvalidSize, "four_point_params needs exactly four points");
  std::array<std::size_t, 4> p{0, 1, 2, 3};
  do {
    auto dd = [&](std::size_t i, std::size_t j) -> const T& { return x(p[i], p[j]); };
    T s1 = dd(0, 2) + dd(1, 3);
    T s2 = dd(0, 1) + dd(2, 3);
    T s3 = dd(0, 3) + dd(1, 2);
    if (s2 <= s1 && s3 <= s2) {
      FourPointParams<T> r;
      r.relabeling = p;
      T half(1, 2);
      r.w = (s1 - s2) * half;
      r.ell = (s1 - s3) * half;
      r.a = (dd(0, 1) + dd(0, 3) - dd(1, 3)) * half;
      r.b = (dd(0, 1) + dd(1, 2) - dd(0, 2)) * half;
      r.c = (dd(1, 2) + dd(2, 3) - dd(1, 3)) * half;
      r.d = (dd(0, 3) + dd(2, 3) - dd(0, 2)) * half;
      Matrix<T> back = r.normal_form();
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (!(back(i, j) == dd(i, j)))
            throw Error(Errc::NumericFailure, "four-point normal form does not reproduce the input");
      return r;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  throw Error(Errc::NumericFailure, "no relabeling orders the pairing sums");
}

/// Y = X u {y1..y4} inside the hull of a four-point space, with coincident
/// points merged.
template <Scalar T>
struct HullSuperspace {
  DistanceMatrix<T> space;
  std::vector<std::size_t> x_indices;  // original X point k sits at x_indices[k]
  FourPointParams<T> params;
  /// For each Y point: -1 for an X point, else the normal-form corner 0..3.
  std::vector<int> corner;
};

namespace detail {

// Corner positions in the l1 plane: y1=(0,0), y2=(l,0), y3=(l,w), y4=(0,w).
template <Scalar T>
T rectangle_distance(const FourPointParams<T>& p, std::size_t i, std::size_t j) {
  if (i == j) return T(0);
  auto side = [&](std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    if ((u == 0 && v == 1) || (u == 2 && v == 3)) return p.ell;
    if ((u == 1 && v == 2) || (u == 0 && v == 3)) return p.w;
    return p.ell + p.w;
  };
  return side(i, j);
}

}  // namespace detail

template <Scalar T>
HullSuperspace<T> injective_hull_superspace(const DistanceMatrix<T>& x) {
  if (x.size() != 4) throw Error(Errc::InvalidSize, "hull superspace needs exactly four points");
  HullSuperspace<T> out;
  out.params = four_point_params(x);
  const auto& p = out.params;
  const auto legs = p.legs();
  // Normal-form index of each original point.
  std::array<std::size_t, 4> nf_of{};
  for (std::size_t i = 0; i < 4; ++i) nf_of[p.relabeling[i]] = i;

  // Abstract points: 0..3 original X points, 4..7 corners y1..y4.
  auto dist = [&](std::size_t u, std::size_t v) -> T {
    if (u == v) return T(0);
    if (u < 4 && v < 4) return x(u, v);
    if (u >= 4 && v >= 4) return detail::rectangle_distance(p, u - 4, v - 4);
    if (u >= 4) std::swap(u, v);
    std::size_t i = nf_of[u];
    return legs[i] + detail::rectangle_distance(p, i, v - 4);
  };

  std::vector<std::size_t> kept{0, 1, 2, 3};
  for (std::size_t c = 4; c < 8; ++c) {
    bool dup = false;
    for (auto k : kept)
      if (is_zero(dist(k, c))) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(c);
  }
  Matrix<T> m(kept.size(), kept.size());
  std::vector<std::string> labels = x.labels();
  out.corner.assign(4, -1);
  for (std::size_t a = 4; a < kept.size(); ++a) {
    labels.push_back("y" + std::to_string(kept[a] - 3));
    out.corner.push_back(static_cast<int>(kept[a] - 4));
  }
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b) m(a, b) = dist(kept[a], kept[b]);
  out.space = DistanceMatrix<T>::validate(std::move(m), std::move(labels));
  out.x_indices = {0, 1, 2, 3};
  return out;
}

// ---------------------------------------------------------------------------
// Weighted trees

template <Scalar T>
struct WeightedTree {
  struct Edge {
    std::size_t u, v;
    T weight;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::size_t basepoint = 0;

  std::size_t size() const { return vertices.size(); }

  /// Checks weights, connectivity and acyclicity.
  void check() const {
    const std::size_t n = vertices.size();
    if (n == 0) throw Error(Errc::InvalidSize, "empty tree");
    if (basepoint >= n) throw Error(Errc::InvalidSize, "tree basepoint out of range");
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n || e.u == e.v) throw Error(Errc::NotATree, "bad edge endpoints", {e.u, e.v});
      if (sgn(e.weight) <= 0) throw Error(Errc::NegativeWeight, "edge weight must be positive", {e.u, e.v});
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& e : edges) {
      auto ru = find(e.u), rv = find(e.v);
      if (ru == rv) throw Error(Errc::NotATree, "edge set contains a cycle", {e.u, e.v});
      parent[ru] = rv;
    }
    if (edges.size() + 1 != n) throw Error(Errc::DisconnectedTree, "tree is not connected");
  }

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertices.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      adj[edges[k].u].push_back({edges[k].v, k});
      adj[edges[k].v].push_back({edges[k].u, k});
    }
    return adj;
  }

  /// Edge indices on the unique path from `from` to `to`.
  std::vector<std::size_t> path_edges(std::size_t from, std::size_t to) const {
    auto adj = adjacency();
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> prev(vertices.size());
    std::vector<bool> seen(vertices.size(), false);
    std::queue<std::size_t> q;
    q.push(from);
    seen[from] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto [v, k] : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          prev[v] = std::make_pair(u, k);
          q.push(v);
        }
    }
    std::vector<std::size_t> path;
    for (std::size_t v = to; v != from; v = prev[v]->first) {
      if (!prev[v]) throw Error(Errc::DisconnectedTree, "no path between vertices");
      path.push_back(prev[v]->second);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }
};

/// Shortest-path metric on all tree vertices.
template <Scalar T>
DistanceMatrix<T> tree_metric(const WeightedTree<T>& tree) {
  tree.check();
  const std::size_t n = tree.size();
  auto adj = tree.adjacency();
  Matrix<T> m(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto [v, k] : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          m(s, v) = m(s, u) + tree.edges[k].weight;
          q.push(v);
        }
    }
  }
  return DistanceMatrix<T>::validate(std::move(m), tree.vertices);
}

/// Reconstructs a weighted tree (input points first, then Steiner vertices
/// s1, s2, ...) realizing x exactly, or nullopt if x is not a tree metric.
/// Points are inserted one at a time; each attaches to the current tree at
/// the pair minimizing the Gromov product (a|b)_x.
template <Scalar T>
std::optional<WeightedTree<T>> detect_tree(const DistanceMatrix<T>& x) {
  const std::size_t n = x.size();
  struct E {
    std::size_t u, v;
    T w;
    bool alive = true;
  };
  std::vector<E> edges;
  std::size_t next_id = n;
  std::vector<std::size_t> steiner;

  if (n >= 2) edges.push_back({0, 1, x(0, 1)});

  auto path = [&](std::size_t from, std::size_t to) {
    // Returns vertex sequence from..to through alive edges.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(next_id);
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (edges[k].alive) {
        adj[edges[k].u].push_back({edges[k].v, k});
        adj[edges[k].v].push_back({edges[k].u, k});
      }
    std::vector<std::ptrdiff_t> prev(next_id, -1);
    std::vector<std::size_t> prev_edge(next_id, 0);
    std::vector<bool> seen(next_id, false);
    std::queue<std::size_t> q;
    q.push(from);
    seen[from] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto [v, k] : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          prev[v] = static_cast<std::ptrdiff_t>(u);
          prev_edge[v] = k;
          q.push(v);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> seq;  // (vertex, edge into it)
    for (std::size_t v = to; v != from; v = static_cast<std::size_t>(prev[v])) seq.push_back({v, prev_edge[v]});
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  for (std::size_t xi = 2; xi < n; ++xi) {
    std::optional<T> best;
    std::size_t ba = 0, bb = 1;
    for (std::size_t a = 0; a < xi; ++a)
      for (std::size_t b = a + 1; b < xi; ++b) {
        T pend = (x(a, xi) + x(b, xi) - x(a, b)) * T(1, 2);
        if (!best || pend < *best) {
          best = pend;
          ba = a;
          bb = b;
        }
      }
    T pend = *best;
    if (sgn(pend) < 0) return std::nullopt;
    T t = x(ba, xi) - pend;
    if (sgn(t) < 0 || x(ba, bb) < t) return std::nullopt;

    auto seq = path(ba, bb);
    T acc(0);
    std::size_t cur = ba;
    std::optional<std::size_t> attach;
    for (auto [v, k] : seq) {
      if (acc == t) {
        attach = cur;
        break;
      }
      T nxt = acc + edges[k].w;
      if (t < nxt) {
        // Split edge k at distance t - acc from cur.
        std::size_t mid = is_zero(pend) ? xi : next_id++;
        if (mid != xi) steiner.push_back(mid);
        std::size_t other = edges[k].u == cur ? edges[k].v : edges[k].u;
        edges[k].alive = false;
        edges.push_back({cur, mid, t - acc});
        edges.push_back({mid, other, nxt - t});
        attach = mid;
        break;
      }
      acc = nxt;
      cur = v;
    }
    if (!attach) attach = bb;  // t == d(a, b)
    if (*attach == xi) continue;
    if (is_zero(pend)) {
      // x coincides with an existing vertex; only a Steiner vertex may absorb it.
      auto it = std::find(steiner.begin(), steiner.end(), *attach);
      if (it == steiner.end()) return std::nullopt;
      steiner.erase(it);
      for (auto& e : edges) {
        if (e.u == *attach) e.u = xi;
        if (e.v == *attach) e.v = xi;
      }
      continue;
    }
    edges.push_back({*attach, xi, pend});
  }

  WeightedTree<T> tree;
  tree.vertices = x.labels();
  std::vector<std::size_t> remap(next_id, 0);
  for (std::size_t i = 0; i < n; ++i) remap[i] = i;
  std::sort(steiner.begin(), steiner.end());
  for (std::size_t s = 0; s < steiner.size(); ++s) {
    remap[steiner[s]] = n + s;
    tree.vertices.push_back("s" + std::to_string(s + 1));
  }
  for (const auto& e : edges)
    if (e.alive) {
      if (sgn(e.w) <= 0) return std::nullopt;
      tree.edges.push_back({remap[e.u], remap[e.v], e.w});
    }
  try {
    auto dm = tree_metric(tree);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(dm(i, j) == x(i, j))) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return tree;
}

}  // namespace lipfree
