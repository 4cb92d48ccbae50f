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

// Vertex enumeration for bounded H-polytopes {x : A x <= b} by the double
// description method on the homogenized cone {(t, x) : b t - A x >= 0}.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/matrix.hpp"

namespace lipfree {

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

}  // namespace detail

/// Lexicographic order on vectors using the field's comparison.
template <Scalar T>
bool lex_less(const Vec<T>& a, const Vec<T>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

/// Sorts lexicographically and drops (tolerance-)equal neighbours.
template <Scalar T>
void sort_unique(std::vector<Vec<T>>& pts) {
  std::sort(pts.begin(), pts.end(), lex_less<T>);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

/// Vertices of the bounded polytope {x in R^m : A x <= b}, in lexicographic
/// order. Throws TooLarge when the ray set exceeds max_rays.
template <Scalar T>
std::vector<Vec<T>> enumerate_vertices(const Matrix<T>& a, const Vec<T>& b, std::size_t max_rays = 2'000'000) {
  const std::size_t m = a.cols();
  const std::size_t dim = m + 1;
  const std::size_t k = a.rows() + 1;
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "rhs length");
  // Row i of h: (b_i, -a_i); last row: t >= 0.
  Matrix<T> h(k, dim);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    h(i, 0) = b[i];
    for (std::size_t j = 0; j < m; ++j) h(i, j + 1) = -a(i, j);
  }
  h(k - 1, 0) = T(1);

  // Initial basis rows: greedy independent selection.
  std::vector<std::size_t> init;
  {
    Matrix<T> acc(0, dim);
    std::vector<Vec<T>> rows;
    for (std::size_t i = 0; i < k && init.size() < dim; ++i) {
      Vec<T> r(h.row(i).begin(), h.row(i).end());
      rows.push_back(r);
      Matrix<T> test(rows.size(), dim);
      for (std::size_t x = 0; x < rows.size(); ++x)
        for (std::size_t y = 0; y < dim; ++y) test(x, y) = rows[x][y];
      if (rank(test) == rows.size())
        init.push_back(i);
      else
        rows.pop_back();
    }
  }
  if (init.size() < dim) throw Error(Errc::RankDeficient, "polytope is unbounded or lower dimensional");

  Matrix<T> hi(dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) hi(x, y) = h(init[x], y);
  auto inv = inverse(hi);
  if (!inv) throw Error(Errc::RankDeficient, "initial cone basis singular");

  struct Ray {
    Vec<T> v;
    detail::Bitset zero;
  };
  auto normalize = [](Vec<T>& v) {
    std::size_t piv = 0;
    if (is_zero(v[0])) {
      for (std::size_t i = 1; i < v.size(); ++i)
        if (abs(v[piv]) < abs(v[i])) piv = i;
    }
    T s = abs(v[piv]);
    if (is_zero(s)) return;
    for (auto& x : v) x /= s;
  };

  std::vector<bool> processed(k, false);
  std::vector<Ray> rays;
  for (std::size_t c = 0; c < dim; ++c) {
    Ray r{inv->column(c), detail::Bitset(k)};
    normalize(r.v);
    for (std::size_t x = 0; x < dim; ++x)
      if (x != c) r.zero.set(init[x]);
    rays.push_back(std::move(r));
  }
  for (auto i : init) processed[i] = true;

  for (std::size_t i = 0; i < k; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    std::vector<std::size_t> pos, neg;
    std::vector<T> val(rays.size());
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot<T>(h.row(i), std::span<const T>(rays[r].v));
      int s = sgn(val[r]);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
      if (s == 0) rays[r].zero.set(i);
    }
    if (neg.empty()) continue;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sgn(val[r]) >= 0) next.push_back(rays[r]);
    for (auto p : pos)
      for (auto q : neg) {
        detail::Bitset common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{Vec<T>(dim), common};
        for (std::size_t y = 0; y < dim; ++y) nr.v[y] = val[p] * rays[q].v[y] - val[q] * rays[p].v[y];
        normalize(nr.v);
        nr.zero.set(i);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
    if (rays.size() > max_rays) throw Error(Errc::TooLarge, "double description ray count exceeded");
  }

  std::vector<Vec<T>> verts;
  for (auto& r : rays) {
    if (sgn(r.v[0]) <= 0) throw Error(Errc::RankDeficient, "polytope is unbounded");
    Vec<T> x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = r.v[j + 1] / r.v[0];
    verts.push_back(std::move(x));
  }
  sort_unique(verts);
  return verts;
}

/// Number of constraints of {A x <= b} tight at x, and the rank of their rows.
template <Scalar T>
std::size_t tight_rank(const Matrix<T>& a, const Vec<T>& b, const Vec<T>& x) {
  std::vector<std::size_t> tight;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (dot<T>(a.row(i), std::span<const T>(x)) == b[i]) tight.push_back(i);
  Matrix<T> t(tight.size(), a.cols());
  for (std::size_t r = 0; r < tight.size(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) t(r, j) = a(tight[r], j);
  return rank(t);
}

}  // namespace lipfree
