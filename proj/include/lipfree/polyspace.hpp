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

// Polyhedral norms on R^d and the operator spaces L(F) over them.
//
// Operators act on column vectors. Trace pairing: <A, X> = Tr(A X).

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/matrix.hpp"
#include "lipfree/polytope.hpp"

namespace lipfree {

enum class SpaceKind { Linf, L1, Custom };

inline std::string_view space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Linf: return "linf";
    case SpaceKind::L1: return "l1";
    case SpaceKind::Custom: return "custom";
  }
  return "?";
}

/// Norm ||x|| = max_f f.x over dual_extremes. For Linf and L1 the extreme
/// sets are implicit.
template <Scalar T>
struct PolyhedralSpace {
  std::size_t dim = 0;
  SpaceKind kind = SpaceKind::Linf;
  std::vector<Vec<T>> dual_extremes;                   // Custom only
  std::optional<std::vector<Vec<T>>> primal_extremes;  // Custom only

  static PolyhedralSpace linf(std::size_t d) { return {d, SpaceKind::Linf, {}, std::nullopt}; }
  static PolyhedralSpace l1(std::size_t d) { return {d, SpaceKind::L1, {}, std::nullopt}; }

  static PolyhedralSpace custom(std::vector<Vec<T>> duals, std::optional<std::vector<Vec<T>>> primals = std::nullopt) {
    if (duals.empty()) throw Error(Errc::InvalidSize, "custom space needs dual extremes");
    PolyhedralSpace s{duals[0].size(), SpaceKind::Custom, std::move(duals), std::move(primals)};
    for (const auto& f : s.dual_extremes)
      if (f.size() != s.dim) throw Error(Errc::DimensionMismatch, "dual extreme length");
    Matrix<T> m = Matrix<T>::from_columns(s.dual_extremes);
    if (rank(m) != s.dim) throw Error(Errc::RankDeficient, "dual extremes do not span");
    return s;
  }

  T norm(const Vec<T>& x) const {
    if (x.size() != dim) throw Error(Errc::DimensionMismatch, "vector length");
    T best(0);
    switch (kind) {
      case SpaceKind::Linf:
        for (const auto& v : x) best = max_of(best, abs(v));
        break;
      case SpaceKind::L1:
        for (const auto& v : x) best += abs(v);
        break;
      case SpaceKind::Custom:
        for (const auto& f : dual_extremes) best = max_of(best, dot(f, x));
        break;
    }
    return best;
  }

  /// Extreme points of the unit ball. Custom spaces without stored primal
  /// extremes derive them by vertex enumeration of {x : f.x <= 1}.
  std::vector<Vec<T>> ball_extremes() const {
    std::vector<Vec<T>> out;
    if (kind == SpaceKind::Custom) {
      if (primal_extremes) return *primal_extremes;
      Matrix<T> a(dual_extremes.size(), dim);
      for (std::size_t i = 0; i < dual_extremes.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = dual_extremes[i][j];
      return enumerate_vertices(a, Vec<T>(dual_extremes.size(), T(1)));
    }
    if (kind == SpaceKind::L1) {
      for (std::size_t j = 0; j < dim; ++j)
        for (int s : {-1, 1}) {
          Vec<T> e(dim, T(0));
          e[j] = T(s);
          out.push_back(std::move(e));
        }
    } else {
      if (dim > 20) throw Error(Errc::TooLarge, "too many sign vectors");
      for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
        Vec<T> e(dim);
        for (std::size_t j = 0; j < dim; ++j) e[j] = (mask >> (dim - 1 - j)) & 1U ? T(1) : T(-1);
        out.push_back(std::move(e));
      }
    }
    sort_unique(out);
    return out;
  }

  /// Extreme points of the dual ball.
  std::vector<Vec<T>> dual_ball_extremes() const {
    if (kind == SpaceKind::Custom) return dual_extremes;
    PolyhedralSpace swapped = kind == SpaceKind::Linf ? l1(dim) : linf(dim);
    return swapped.ball_extremes();
  }
};

/// A subspace E of F given by a basis (columns of u).
template <Scalar T>
struct SubspaceBasis {
  PolyhedralSpace<T> ambient;
  Matrix<T> u;

  SubspaceBasis() = default;
  SubspaceBasis(PolyhedralSpace<T> f, Matrix<T> basis) : ambient(std::move(f)), u(std::move(basis)) {
    if (u.rows() != ambient.dim) throw Error(Errc::DimensionMismatch, "basis rows differ from ambient dimension");
    if (u.cols() == 0 || rank(u) != u.cols()) throw Error(Errc::RankDeficient, "basis columns are dependent");
  }
  std::size_t dim() const { return u.cols(); }
};

template <Scalar T>
T op_norm(const Matrix<T>& a, const PolyhedralSpace<T>& f) {
  if (a.rows() != f.dim || a.cols() != f.dim) throw Error(Errc::DimensionMismatch, "operator shape differs from space");
  T best(0);
  if (f.kind == SpaceKind::Linf) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      T s(0);
      for (std::size_t j = 0; j < a.cols(); ++j) s += abs(a(i, j));
      best = max_of(best, s);
    }
  } else if (f.kind == SpaceKind::L1) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      T s(0);
      for (std::size_t i = 0; i < a.rows(); ++i) s += abs(a(i, j));
      best = max_of(best, s);
    }
  } else {
    for (const auto& x : f.ball_extremes()) best = max_of(best, f.norm(a * x));
  }
  return best;
}

/// sum_i max_j |a_ij|: the 1-nuclear norm for l_1^d.
template <Scalar T>
T nuclear1_l1(const Matrix<T>& a) {
  if (!a.square()) throw Error(Errc::NotSquare, "nuclear norm of a non-square matrix");
  T s(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T m(0);
    for (std::size_t j = 0; j < a.cols(); ++j) m = max_of(m, abs(a(i, j)));
    s += m;
  }
  return s;
}

inline constexpr std::size_t kDefaultOperatorCap = 3;

/// Extreme points of the unit ball of L(F), in lexicographic order of their
/// row-major entries. Linf: one +-1 per row; L1: one +-1 per column.
template <Scalar T>
std::vector<Matrix<T>> operator_ball_vertices(const PolyhedralSpace<T>& f, std::size_t cap = kDefaultOperatorCap) {
  const std::size_t d = f.dim;
  std::vector<Vec<T>> flat;
  if (f.kind == SpaceKind::Custom) {
    if (d > cap) throw Error(Errc::TooLarge, "custom operator ball enumeration capped at d=" + std::to_string(cap));
    auto xs = f.ball_extremes();
    const auto& fs = f.dual_extremes;
    Matrix<T> a(xs.size() * fs.size(), d * d);
    std::size_t r = 0;
    for (const auto& x : xs)
      for (const auto& g : fs) {
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) a(r, i * d + j) = g[i] * x[j];
        ++r;
      }
    flat = enumerate_vertices(a, Vec<T>(a.rows(), T(1)));
  } else {
    if (d > 6) throw Error(Errc::TooLarge, "operator vertex list too large; use column generation");
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 2 * d;
    for (std::size_t code = 0; code < total; ++code) {
      Vec<T> m(d * d, T(0));
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        std::size_t choice = c % (2 * d);
        c /= 2 * d;
        std::size_t k = choice / 2;
        T s = choice % 2 ? T(-1) : T(1);
        if (f.kind == SpaceKind::Linf)
          m[i * d + k] = s;
        else
          m[k * d + i] = s;
      }
      flat.push_back(std::move(m));
    }
    sort_unique(flat);
  }
  std::vector<Matrix<T>> out;
  for (const auto& v : flat) {
    Matrix<T> m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = v[i * d + j];
    out.push_back(std::move(m));
  }
  return out;
}

/// Number of operator-ball vertices; closed form (2d)^d for Linf and L1.
template <Scalar T>
std::size_t operator_vertex_count(const PolyhedralSpace<T>& f, std::size_t cap = kDefaultOperatorCap) {
  if (f.kind == SpaceKind::Custom) return operator_ball_vertices(f, cap).size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < f.dim; ++i) total *= 2 * f.dim;
  return total;
}

/// Vertex E of B_{L(F)} maximizing Tr(A E); Linf and L1 only.
template <Scalar T>
Matrix<T> best_operator_vertex(const Matrix<T>& a, const PolyhedralSpace<T>& f) {
  const std::size_t d = f.dim;
  Matrix<T> e(d, d);
  if (f.kind == SpaceKind::Linf) {
    // Tr(A E) = sum_i a_{k(i), i} s_i for E with entry s_i at (i, k(i)).
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < d; ++k)
        if (abs(a(best, i)) < abs(a(k, i))) best = k;
      e(i, best) = sgn(a(best, i)) < 0 ? T(-1) : T(1);
    }
  } else if (f.kind == SpaceKind::L1) {
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < d; ++k)
        if (abs(a(j, best)) < abs(a(j, k))) best = k;
      e(best, j) = sgn(a(j, best)) < 0 ? T(-1) : T(1);
    }
  } else {
    throw Error(Errc::VerticesUnavailable, "closed-form pricing needs an linf or l1 space");
  }
  return e;
}

/// nu_1(A) = max { Tr(A X) : ||X||_{L(F)} <= 1 }.
template <Scalar T>
T nuclear1(const Matrix<T>& a, const PolyhedralSpace<T>& f, std::size_t cap = kDefaultOperatorCap) {
  if (a.rows() != f.dim || a.cols() != f.dim) throw Error(Errc::DimensionMismatch, "operator shape differs from space");
  if (f.kind == SpaceKind::L1) return nuclear1_l1(a);
  if (f.kind == SpaceKind::Linf) return nuclear1_l1(a.transpose());
  if (f.dim > cap) throw Error(Errc::VerticesUnavailable, "custom operator ball too large to enumerate");
  T best(0);
  for (const auto& e : operator_ball_vertices(f, cap)) best = max_of(best, (a * e).trace());
  return best;
}

/// The hyperplane sum x_i = 0 of R^n inside f (basis e_j - e_n).
template <Scalar T>
SubspaceBasis<T> sum_zero_hyperplane(const PolyhedralSpace<T>& f) {
  const std::size_t n = f.dim;
  if (n < 2) throw Error(Errc::InvalidSize, "hyperplane needs n >= 2");
  Matrix<T> u(n, n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    u(j, j) = T(1);
    u(n - 1, j) = T(-1);
  }
  return SubspaceBasis<T>(f, std::move(u));
}

/// Orthogonal projection U (U^T U)^{-1} U^T onto span(U).
template <Scalar T>
Matrix<T> orthogonal_projection(const SubspaceBasis<T>& e) {
  Matrix<T> ut = e.u.transpose();
  auto g = inverse(ut * e.u);
  if (!g) throw Error(Errc::RankDeficient, "basis Gram matrix is singular");
  return e.u * *g * ut;
}

/// Basis of the orthogonal complement of span(U), as columns (d x (d - n)).
template <Scalar T>
Matrix<T> null_basis(const SubspaceBasis<T>& e) {
  return null_space(e.u.transpose());
}

}  // namespace lipfree
