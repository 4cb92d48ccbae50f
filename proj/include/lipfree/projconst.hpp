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

// Relative projection constants.
//
//   Route A  lambda(E, F) as an LP over the vertices of B_{L(F)}.
//   Route B  lambda(F(X), F(Y)) as an LP over extension operators.
//   Route C  trace-duality certificates Tr(AP) / nu_1(A).

#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/free_space.hpp"
#include "lipfree/lp.hpp"
#include "lipfree/matrix.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/polyspace.hpp"

namespace lipfree {

enum class Route { A, B, C };

inline std::string_view route_name(Route r) {
  switch (r) {
    case Route::A: return "A";
    case Route::B: return "B";
    case Route::C: return "C";
  }
  return "?";
}

struct Diagnostics {
  std::size_t lp_rows = 0;
  std::size_t lp_cols = 0;
  std::size_t columns_generated = 0;
  std::size_t iterations = 0;
  bool dualized = false;
};

template <Scalar T>
struct ProjConstResult {
  T value{0};
  Route route = Route::A;
  std::optional<Matrix<T>> projection;  // Route A: Q with range E
  std::optional<Matrix<T>> extension;   // Route B: (|Y|-1) x (|X|-1)
  std::optional<Matrix<T>> certificate;
  /// Route A: operator vertices of the optimal basis (the first
  /// support_basic entries, in row order) and then any others with positive
  /// weight.
  std::vector<Matrix<T>> support;
  std::size_t support_basic = 0;
  bool certificate_verified = false;
  bool lp_verified = false;
  Diagnostics diagnostics;
  std::vector<std::string> warnings;
};

/// Compact minimizes ||P|| directly over projections P, without operator
/// vertices.
enum class VertexMode { Auto, Enumerate, ColumnGeneration, Compact };

struct RouteAOptions {
  VertexMode mode = VertexMode::Auto;
  /// Auto switches to the compact LP above this vertex count.
  std::size_t enumerate_limit = 5000;
  std::size_t custom_cap = kDefaultOperatorCap;
  /// Exact column generation first runs in double precision and seeds the
  /// exact master with the float optimum's basis.
  bool float_guide = true;
  SolveOptions lp;
};

namespace detail {

template <Scalar T>
bool near(const T& a, const T& b, double tol) {
  return approx_equal(a, b, tol);
}

template <Scalar T>
bool near(const Matrix<T>& a, const Matrix<T>& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    if (!approx_equal(a.data()[k], b.data()[k], tol)) return false;
  return true;
}

template <Scalar T>
bool at_most(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return !(b < a);
  } else {
    return to_double(a) <= to_double(b) + tol * (1.0 + std::fabs(to_double(b)));
  }
}

// Linear functionals <G, M>_F = c on d x d matrices M, flattened row-major,
// pre-reduced to an independent set.
template <Scalar T>
struct ProjectionSystem {
  std::size_t d = 0;
  std::vector<Vec<T>> g;
  Vec<T> c;
};

template <Scalar T>
ProjectionSystem<T> reduce_system(std::size_t d, const std::vector<Vec<T>>& g, const Vec<T>& c) {
  const std::size_t dd = d * d;
  ProjectionSystem<T> out;
  out.d = d;
  if constexpr (is_exact_v<T>) {
    // An independent subset of the original rows: pivot columns of G^T.
    Matrix<T> gt(dd, g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t k = 0; k < dd; ++k) gt(k, i) = g[i][k];
    for (auto r : rref(gt)) {
      out.g.push_back(g[r]);
      out.c.push_back(c[r]);
    }
  } else {
    // Float: the reduced echelon rows are better conditioned.
    Matrix<T> aug(g.size(), dd + 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t k = 0; k < dd; ++k) aug(i, k) = g[i][k];
      aug(i, dd) = c[i];
    }
    auto piv = rref(aug, dd);
    for (std::size_t r = piv.size(); r < aug.rows(); ++r)
      if (!is_zero(aug(r, dd))) throw Error(Errc::NumericFailure, "projection system is inconsistent");
    for (std::size_t r = 0; r < piv.size(); ++r) {
      Vec<T> row(dd);
      for (std::size_t k = 0; k < dd; ++k) row[k] = aug(r, k);
      out.g.push_back(std::move(row));
      out.c.push_back(aug(r, dd));
    }
  }
  return out;
}

// M u = u for each basis column u, W^T M = 0.
template <Scalar T>
ProjectionSystem<T> projection_system(const SubspaceBasis<T>& e) {
  const std::size_t d = e.ambient.dim;
  Matrix<T> w = null_basis(e);
  std::vector<Vec<T>> g;
  Vec<T> c;
  for (std::size_t r = 0; r < e.dim(); ++r)
    for (std::size_t a = 0; a < d; ++a) {
      Vec<T> row(d * d, T(0));
      for (std::size_t b = 0; b < d; ++b) row[a * d + b] = e.u(b, r);
      g.push_back(std::move(row));
      c.push_back(e.u(a, r));
    }
  for (std::size_t s = 0; s < w.cols(); ++s)
    for (std::size_t b = 0; b < d; ++b) {
      Vec<T> row(d * d, T(0));
      for (std::size_t a = 0; a < d; ++a) row[a * d + b] = w(a, s);
      g.push_back(std::move(row));
      c.push_back(T(0));
    }
  return reduce_system(d, g, c);
}

template <Scalar T>
SparseRow<T> column_entries(const ProjectionSystem<T>& sys, const Matrix<T>& e) {
  SparseRow<T> col;
  for (std::size_t i = 0; i < sys.g.size(); ++i) {
    T v = dot<T>(std::span<const T>(sys.g[i]), std::span<const T>(e.data()));
    if (!is_zero(v)) col.push_back({i, v});
  }
  return col;
}

// Y = sum_i y_i G_i reshaped to d x d.
template <Scalar T>
Matrix<T> dual_matrix(const ProjectionSystem<T>& sys, const Vec<T>& y) {
  Matrix<T> m(sys.d, sys.d);
  for (std::size_t i = 0; i < sys.g.size(); ++i) {
    if (is_zero(y[i])) continue;
    for (std::size_t k = 0; k < sys.d * sys.d; ++k)
      if (!is_zero(sys.g[i][k])) m(k / sys.d, k % sys.d) += y[i] * sys.g[i][k];
  }
  return m;
}

template <Scalar T>
std::string matrix_key(const Matrix<T>& m) {
  return to_string(m);
}

// Vertices whose half-sum is s * e_i e_k^T (Linf; transposed for L1).
template <Scalar T>
std::vector<Matrix<T>> entry_decomposition(std::size_t d, std::size_t i, std::size_t k, const T& s, SpaceKind kind) {
  Matrix<T> v1(d, d), v2(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (r == i) continue;
    v1(r, 0) = T(1);
    v2(r, 0) = T(-1);
  }
  v1(i, k) = s;
  v2(i, k) = s;
  if (kind == SpaceKind::L1) return {v1.transpose(), v2.transpose()};
  return {v1, v2};
}

}  // namespace detail

/// Checks a candidate certificate against P: A P = P A P, nu_1(A) <= 1 and
/// Tr(A P) = value.
template <Scalar T>
bool verify_certificate(const Matrix<T>& a, const Matrix<T>& p, const PolyhedralSpace<T>& f, const T& value,
                        double tol = 1e-9) {
  Matrix<T> ap = a * p;
  if (!detail::near(ap, p * ap, tol)) return false;
  if (!detail::at_most(nuclear1(a, f), T(1), tol)) return false;
  return detail::near(ap.trace(), value, tol);
}

namespace detail {

// min t over free P with <G_i, P>_F = c_i and ||P|| <= t, the norm bound
// written through its extreme functionals. The equality duals give the
// certificate.
template <Scalar T>
ProjConstResult<T> lambda_compact(const SubspaceBasis<T>& e, const ProjectionSystem<T>& sys, const Matrix<T>& p,
                                  const RouteAOptions& opt) {
  const auto& f = e.ambient;
  const std::size_t d = f.dim;
  LpProblem<T> lp;
  std::size_t t = lp.add_variable(T(1), true, "t");
  auto pv = [&](std::size_t i, std::size_t k) { return 1 + i * d + k; };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      lp.add_variable(T(0), true, "p_" + std::to_string(i + 1) + "_" + std::to_string(k + 1));
  for (std::size_t r = 0; r < sys.g.size(); ++r) {
    SparseRow<T> row;
    for (std::size_t k = 0; k < d * d; ++k)
      if (!is_zero(sys.g[r][k])) row.push_back({1 + k, sys.g[r][k]});
    lp.add_row(std::move(row), RowKind::Eq, sys.c[r], "g" + std::to_string(r + 1));
  }
  if (f.kind == SpaceKind::Custom) {
    for (const auto& x : f.ball_extremes())
      for (const auto& g : f.dual_extremes) {
        SparseRow<T> row;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t k = 0; k < d; ++k)
            if (!is_zero(g[i]) && !is_zero(x[k])) row.push_back({pv(i, k), g[i] * x[k]});
        row.push_back({t, T(-1)});
        lp.add_row(std::move(row), RowKind::Le, T(0));
      }
  } else {
    // s_ik >= |p_ik|; row sums (Linf) or column sums (L1) of s at most t.
    std::size_t s0 = lp.num_vars();
    for (std::size_t k = 0; k < d * d; ++k) lp.add_variable(T(0), false, "s" + std::to_string(k + 1));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        for (int sign : {1, -1})
          lp.add_row({{pv(i, k), T(sign)}, {s0 + i * d + k, T(-1)}}, RowKind::Le, T(0));
    for (std::size_t a = 0; a < d; ++a) {
      SparseRow<T> row;
      for (std::size_t b = 0; b < d; ++b)
        row.push_back({f.kind == SpaceKind::Linf ? s0 + a * d + b : s0 + b * d + a, T(1)});
      row.push_back({t, T(-1)});
      lp.add_row(std::move(row), RowKind::Le, T(0));
    }
  }
  auto sol = solve(lp, opt.lp);
  if (sol.status != LpStatus::Optimal) throw Error(Errc::NumericFailure, "compact Route A LP did not reach an optimum");

  ProjConstResult<T> res;
  res.route = Route::A;
  res.value = sol.objective;
  res.lp_verified = sol.verified;
  res.diagnostics = {lp.num_rows(), lp.num_vars(), 0, sol.iterations, sol.dualized};
  Matrix<T> q(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) q(i, k) = sol.primal[pv(i, k)];
  res.projection = q;
  Vec<T> y(sol.dual.begin(), sol.dual.begin() + static_cast<std::ptrdiff_t>(sys.g.size()));
  Matrix<T> a = dual_matrix(sys, y).transpose();
  for (int sign : {1, -1}) {
    Matrix<T> cand = sign > 0 ? a : a * T(-1);
    if (verify_certificate(cand, p, f, res.value, opt.lp.tolerance)) {
      res.certificate = std::move(cand);
      res.certificate_verified = true;
      break;
    }
  }
  if (!res.certificate_verified) res.warnings.push_back("dual certificate failed re-verification and was dropped");
  return res;
}

}  // namespace detail

/// Route A: min sum x_j over vertices E_j with sum x_j E_j a projection onto E.
template <Scalar T>
ProjConstResult<T> lambda_subspace(const SubspaceBasis<T>& e, const RouteAOptions& opt = {}) {
  const auto& f = e.ambient;
  const std::size_t d = f.dim;
  auto sys = detail::projection_system(e);
  Matrix<T> p = orthogonal_projection(e);

  bool closed_form = f.kind != SpaceKind::Custom;
  bool colgen = false;
  VertexMode mode = opt.mode;
  if (mode == VertexMode::Auto) {
    bool small = closed_form ? std::pow(2.0 * static_cast<double>(d), static_cast<double>(d)) <=
                                   static_cast<double>(opt.enumerate_limit)
                             : d <= opt.custom_cap;
    mode = small ? VertexMode::Enumerate : VertexMode::Compact;
  }
  if (mode == VertexMode::Compact) return detail::lambda_compact(e, sys, p, opt);
  if (mode == VertexMode::ColumnGeneration) {
    if (!closed_form) throw Error(Errc::VerticesUnavailable, "column generation needs an linf or l1 space");
    colgen = true;
  }

  LpProblem<T> lp;
  for (std::size_t i = 0; i < sys.g.size(); ++i) lp.rows.push_back({{}, RowKind::Eq, sys.c[i], "g" + std::to_string(i + 1)});
  std::vector<Matrix<T>> columns;
  std::map<std::string, std::size_t> seen;
  auto add_vertex = [&](const Matrix<T>& v) {
    auto [it, fresh] = seen.emplace(detail::matrix_key(v), lp.num_vars());
    if (!fresh) return it->second;
    std::size_t j = lp.add_variable(T(1), false, "E" + std::to_string(columns.size() + 1));
    for (auto& [i, val] : detail::column_entries(sys, v)) lp.rows[i].coeffs.push_back({j, val});
    columns.push_back(v);
    return j;
  };
  SolveOptions lp_opt = opt.lp;

  ProjConstResult<T> res;
  res.route = Route::A;
  LpSolution<T> sol;
  if (!colgen) {
    for (const auto& v : operator_ball_vertices(f, opt.custom_cap)) add_vertex(v);
    SolveOptions so = opt.lp;
    so.dualize = Dualize::Never;
    sol = solve(lp, so);
  } else {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (!is_zero(p(i, k)))
          for (const auto& v : detail::entry_decomposition<T>(d, i, k, sgn(p(i, k)) < 0 ? T(-1) : T(1), f.kind))
            add_vertex(v);
    if constexpr (is_exact_v<T>) {
      if (opt.float_guide) {
        RouteAOptions fo;
        fo.mode = VertexMode::ColumnGeneration;
        fo.lp.rule = PivotRule::Dantzig;
        try {
          SubspaceBasis<Float> ef(PolyhedralSpace<Float>{d, f.kind, {}, std::nullopt}, to_float_matrix(e.u));
          auto guide = lambda_subspace(ef, fo);
          std::vector<std::size_t> warm;
          for (std::size_t s = 0; s < guide.support.size(); ++s) {
            const auto& v = guide.support[s];
            Matrix<T> ve(d, d);
            for (std::size_t i = 0; i < d; ++i)
              for (std::size_t k = 0; k < d; ++k) ve(i, k) = T(sgn(v(i, k)));
            std::size_t j = add_vertex(ve);
            if (s < guide.support_basic) warm.push_back(j);
          }
          if (warm.size() == lp.num_rows()) lp_opt.warm_basis = warm;
        } catch (const Error&) {
          res.warnings.push_back("float guide failed; exact column generation ran unguided");
        }
      }
    }
    std::size_t seeded = columns.size();
    std::vector<Matrix<T>> proposals;
    Pricer<T> pricer = [&](const Vec<T>& y, bool) {
      Matrix<T> a = detail::dual_matrix(sys, y).transpose();
      Matrix<T> v = best_operator_vertex(a, f);
      std::vector<GeneratedColumn<T>> out;
      out.push_back({T(1), detail::column_entries(sys, v), "G" + std::to_string(proposals.size())});
      proposals.push_back(std::move(v));
      return out;
    };
    LpProblem<T> grown;
    sol = solve_with_column_generation(lp, pricer, lp_opt, &grown);
    for (std::size_t j = seeded; j < grown.num_vars(); ++j)
      columns.push_back(proposals.at(std::stoul(grown.var_names[j].substr(1))));
    lp = std::move(grown);
  }
  if (sol.status != LpStatus::Optimal) throw Error(Errc::NumericFailure, "Route A LP did not reach an optimum");

  res.value = sol.objective;
  res.lp_verified = sol.verified;
  res.diagnostics = {lp.num_rows(), lp.num_vars(), sol.columns_generated, sol.iterations, sol.dualized};
  Matrix<T> q(d, d);
  for (std::size_t j = 0; j < columns.size() && j < sol.primal.size(); ++j)
    if (!is_zero(sol.primal[j])) q += columns[j] * sol.primal[j];
  res.projection = q;
  {
    std::vector<bool> in_basis(columns.size(), false);
    for (auto j : sol.basis)
      if (j < columns.size()) {
        in_basis[j] = true;
        res.support.push_back(columns[j]);
      }
    res.support_basic = res.support.size();
    for (std::size_t j = 0; j < columns.size() && j < sol.primal.size(); ++j)
      if (!in_basis[j] && sgn(sol.primal[j]) > 0) res.support.push_back(columns[j]);
  }

  Matrix<T> a = detail::dual_matrix(sys, sol.dual).transpose();
  if (verify_certificate(a, p, f, res.value, opt.lp.tolerance)) {
    res.certificate = a;
    res.certificate_verified = true;
  } else {
    res.warnings.push_back("dual certificate failed re-verification and was dropped");
  }
  return res;
}

/// Route A from orthonormal data: U, V with orthonormal columns
/// spanning E and its complement. Used to cross-check the rational system.
template <Scalar T>
T lambda_subspace_orthonormal(const PolyhedralSpace<T>& f, const Matrix<T>& u, const Matrix<T>& v,
                              const SolveOptions& so = {}) {
  const std::size_t d = f.dim;
  std::vector<Vec<T>> g;
  Vec<T> c;
  auto outer = [&](const Matrix<T>& a, std::size_t r, const Matrix<T>& b, std::size_t s) {
    // Tr(a_r b_s^T M) = b_s^T M a_r = <b_s a_r^T, M>_F.
    Vec<T> row(d * d, T(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) row[i * d + j] = b(i, s) * a(j, r);
    return row;
  };
  for (std::size_t r = 0; r < u.cols(); ++r)
    for (std::size_t r2 = 0; r2 < u.cols(); ++r2) {
      g.push_back(outer(u, r, u, r2));
      c.push_back(r == r2 ? T(1) : T(0));
    }
  for (std::size_t s = 0; s < v.cols(); ++s)
    for (std::size_t s2 = 0; s2 < v.cols(); ++s2) {
      g.push_back(outer(v, s, v, s2));
      c.push_back(T(0));
    }
  for (std::size_t r = 0; r < u.cols(); ++r)
    for (std::size_t s = 0; s < v.cols(); ++s) {
      g.push_back(outer(u, r, v, s));
      c.push_back(T(0));
    }
  detail::ProjectionSystem<T> sys;
  sys.d = d;
  sys.g = g;
  sys.c = c;
  LpProblem<T> lp;
  for (std::size_t i = 0; i < g.size(); ++i) lp.rows.push_back({{}, RowKind::Eq, c[i], {}});
  for (const auto& e : operator_ball_vertices(f)) {
    std::size_t j = lp.add_variable(T(1));
    for (auto& [i, val] : detail::column_entries(sys, e)) lp.rows[i].coeffs.push_back({j, val});
  }
  SolveOptions o = so;
  o.dualize = Dualize::Never;
  return solve(lp, o).objective;
}

/// Route B: lambda(F(X), F(Y)) as the least norm of a linear extension
/// operator Lip_0(X) -> Lip_0(Y).
template <Scalar T>
ProjConstResult<T> lambda_lip(const PointedSpace<T>& x, const PointedSpace<T>& y, const SolveOptions& so = {},
                              std::size_t cap = kDefaultBallCap) {
  auto idx = subset_indices(x, y);
  auto ball = lipschitz_ball(x, cap);
  const std::size_t m = x.dim();
  std::vector<std::optional<std::size_t>> x_of(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x_of[idx[i]] = i;

  LpProblem<T> lp;
  std::size_t lam = lp.add_variable(T(1), true, "lambda");
  std::vector<std::optional<std::size_t>> first_var(y.size());
  for (std::size_t q = 0; q < y.size(); ++q) {
    if (x_of[q]) continue;
    first_var[q] = lp.num_vars();
    for (std::size_t k = 0; k < m; ++k) lp.add_variable(T(0), true, "t_" + y.space.label(q) + "_" + std::to_string(k + 1));
  }
  lp.add_row({{lam, T(1)}}, RowKind::Ge, T(1), "lambda_ge_1");

  // (T f)(q): a constant when q is in X, a row t_q . f otherwise.
  auto value_at = [&](std::size_t q, const Vec<T>& fk, SparseRow<T>& row, T& constant, const T& sign) {
    if (x_of[q]) {
      if (auto c = x.coord_of(*x_of[q])) constant += sign * fk[*c];
      return;
    }
    for (std::size_t k = 0; k < m; ++k)
      if (!is_zero(fk[k])) row.push_back({*first_var[q] + k, sign * fk[k]});
  };
  for (std::size_t vk = 0; vk < ball.vertices.size(); ++vk) {
    const auto& fk = ball.vertices[vk];
    for (std::size_t a = 0; a < y.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b) {
        if (a == b || (x_of[a] && x_of[b])) continue;
        SparseRow<T> row;
        T constant(0);
        value_at(a, fk, row, constant, T(1));
        value_at(b, fk, row, constant, T(-1));
        row.push_back({lam, -y.space(a, b)});
        lp.add_row(std::move(row), RowKind::Le, -constant,
                   "v" + std::to_string(vk + 1) + "_" + y.space.label(a) + "_" + y.space.label(b));
      }
  }
  auto sol = solve(lp, so);
  if (sol.status != LpStatus::Optimal) throw Error(Errc::NumericFailure, "Route B LP did not reach an optimum");

  ProjConstResult<T> res;
  res.route = Route::B;
  res.value = sol.objective;
  res.lp_verified = sol.verified;
  res.diagnostics = {lp.num_rows(), lp.num_vars(), 0, sol.iterations, sol.dualized};
  Matrix<T> t(y.dim(), m);
  for (std::size_t q = 0; q < y.size(); ++q) {
    auto row = y.coord_of(q);
    if (!row) continue;
    if (x_of[q]) {
      if (auto c = x.coord_of(*x_of[q])) t(*row, *c) = T(1);
    } else {
      for (std::size_t k = 0; k < m; ++k) t(*row, k) = sol.primal[*first_var[q] + k];
    }
  }
  res.extension = t;
  return res;
}

/// Route C: Tr(A P) / nu_1(A) for A with A P = P A P.
template <Scalar T>
T certificate_value(const Matrix<T>& a, const SubspaceBasis<T>& e, double tol = 1e-9) {
  Matrix<T> p = orthogonal_projection(e);
  Matrix<T> ap = a * p;
  if (!detail::near(ap, p * ap, tol)) throw Error(Errc::NotInvariant, "certificate does not satisfy AP = PAP");
  T nu = nuclear1(a, e.ambient);
  if (is_zero(nu)) throw Error(Errc::ZeroNuclearNorm, "certificate has zero nuclear norm");
  return ap.trace() / nu;
}

template <Scalar T>
struct Ae4Certificate {
  Matrix<T> m, s, d, a, p;
  SubspaceBasis<T> e;
  T mu, nu, gamma;
  T value;
};

/// The explicit lower-bound certificate for the rectangle X0 in l_inf^2:
/// A = D S against E = span of the first three columns of M in l_1^5.
template <Scalar T>
Ae4Certificate<T> ae4_certificate() {
  const T r2 = sqrt2_value<T>();
  Ae4Certificate<T> c;
  c.gamma = r2 - T(1);
  const T& g = c.gamma;
  const T o(1), z(0);
  c.m = Matrix<T>{{o, o, o, o, o}, {o, z, z, z, z}, {z, g, g, z, g}, {z, o, z, z, z}, {z, z, o, z, z}};
  const T n(-1);
  c.s = Matrix<T>{{o, o, o, o, o}, {o, o, n, n, n}, {o, n, o, o, o}, {o, n, o, o, n}, {o, n, o, n, o}};
  c.mu = (T(5) - T(3) * r2) / T(7);
  c.nu = (T(1) - c.mu) / T(4);
  c.d = Matrix<T>(5, 5);
  for (std::size_t i = 0; i < 5; ++i) c.d(i, i) = i == 2 ? c.mu : c.nu;
  c.a = c.d * c.s;
  Matrix<T> u(5, 3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j) u(i, j) = c.m(i, j);
  c.e = SubspaceBasis<T>(PolyhedralSpace<T>::l1(5), u);
  c.p = orthogonal_projection(c.e);
  c.value = certificate_value(c.a, c.e);
  return c;
}

template <Scalar T>
struct DiagonalCertificate {
  Matrix<T> a;
  Vec<T> diagonal;
  T value;
};

/// Sign pattern of a matrix: entries in {-1, 0, 1}.
template <Scalar T>
Matrix<T> sign_pattern(const Matrix<T>& m) {
  Matrix<T> s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = T(sgn(m(i, j)));
  return s;
}

/// Best certificate A = D * signs over diagonal D >= 0, for E in l_1^d.
template <Scalar T>
DiagonalCertificate<T> best_diagonal_certificate(const Matrix<T>& signs, const SubspaceBasis<T>& e,
                                                 const SolveOptions& so = {}) {
  if (e.ambient.kind != SpaceKind::L1) throw Error(Errc::FieldUnsupported, "diagonal certificates need an l1 space");
  const std::size_t d = e.ambient.dim;
  if (signs.rows() != d || signs.cols() != d) throw Error(Errc::NotSquare, "sign matrix shape");
  Matrix<T> p = orthogonal_projection(e);
  Matrix<T> sp = signs * p;
  LpProblem<T> lp;
  lp.sense = Sense::Maximize;
  for (std::size_t i = 0; i < d; ++i) lp.add_variable(sp(i, i), false, "D" + std::to_string(i + 1));
  // (D S P)_{ab} = D_a (SP)_{ab};  (P D S P)_{ab} = sum_c P_{ac} D_c (SP)_{cb}.
  Matrix<T> eq(d * d, d + 1);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      std::size_t r = a * d + b;
      eq(r, a) += sp(a, b);
      for (std::size_t c = 0; c < d; ++c) eq(r, c) -= p(a, c) * sp(c, b);
    }
  auto piv = rref(eq, d);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    SparseRow<T> row;
    for (std::size_t c = 0; c < d; ++c)
      if (!is_zero(eq(r, c))) row.push_back({c, eq(r, c)});
    lp.add_row(std::move(row), RowKind::Eq, T(0), "inv" + std::to_string(r + 1));
  }
  SparseRow<T> nu;
  for (std::size_t i = 0; i < d; ++i) {
    T mx(0);
    for (std::size_t j = 0; j < d; ++j) mx = max_of(mx, abs(signs(i, j)));
    if (!is_zero(mx)) nu.push_back({i, mx});
  }
  lp.add_row(std::move(nu), RowKind::Le, T(1), "nuclear");
  SolveOptions o = so;
  o.dualize = Dualize::Never;
  auto sol = solve(lp, o);
  if (sol.status != LpStatus::Optimal || sgn(sol.objective) <= 0)
    throw Error(Errc::InfeasiblePattern, "no nonzero diagonal scaling of the sign pattern is invariant");
  DiagonalCertificate<T> out;
  out.diagonal = sol.primal;
  Matrix<T> dm(d, d);
  for (std::size_t i = 0; i < d; ++i) dm(i, i) = sol.primal[i];
  out.a = dm * signs;
  out.value = sol.objective;
  return out;
}

}  // namespace lipfree
