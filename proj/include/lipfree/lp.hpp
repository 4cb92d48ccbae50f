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

// Deterministic two-phase revised simplex over any Scalar field.
//
// The solver keeps an explicit dense basis inverse. Exact fields never
// refactorize; Float refactorizes periodically. Pricing defaults to Bland's
// rule, which guarantees termination on degenerate problems.
//
// Dual convention (for both senses): objective = rhs . dual, and the
// reduced costs c - A^T dual have the sign that certifies optimality
// (>= 0 for minimization on nonnegative variables, <= 0 for maximization).

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/matrix.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

enum class Sense { Minimize, Maximize };
enum class RowKind { Le, Ge, Eq };
enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class PivotRule { Bland, Dantzig, SteepestEdge };
enum class Dualize { Auto, Never, Always };

inline std::string_view status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

template <Scalar T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

template <Scalar T>
struct LpProblem {
  struct Row {
    SparseRow<T> coeffs;
    RowKind kind = RowKind::Eq;
    T rhs{0};
    std::string name;
  };

  Sense sense = Sense::Minimize;
  std::vector<T> objective;
  std::vector<bool> free_var;
  std::vector<std::string> var_names;
  std::vector<Row> rows;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  std::size_t add_variable(const T& cost, bool is_free = false, std::string name = {}) {
    objective.push_back(cost);
    free_var.push_back(is_free);
    var_names.push_back(name.empty() ? "x" + std::to_string(objective.size()) : std::move(name));
    return objective.size() - 1;
  }

  std::size_t add_row(SparseRow<T> coeffs, RowKind kind, const T& rhs, std::string name = {}) {
    for (const auto& [j, v] : coeffs)
      if (j >= num_vars()) throw Error(Errc::DimensionMismatch, "row references unknown variable");
    rows.push_back({std::move(coeffs), kind, rhs, name.empty() ? "r" + std::to_string(rows.size() + 1) : std::move(name)});
    return rows.size() - 1;
  }
};

template <Scalar T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec<T> primal;
  Vec<T> dual;
  T objective{0};
  std::size_t iterations = 0;
  std::size_t columns_generated = 0;
  bool dualized = false;
  bool verified = false;
  /// Variables whose (nonnegative part) column is basic at the optimum.
  std::vector<std::size_t> basis;
  /// Basic columns of the internal standard form, by row.
  std::vector<std::size_t> standard_basis;
};

struct SolveOptions {
  PivotRule rule = PivotRule::Bland;
  Dualize dualize = Dualize::Auto;
  /// Verification tolerance for Float runs (epsilon_lp).
  double tolerance = 1e-9;
  std::size_t max_iterations = 5'000'000;
  std::size_t refactor_every = 40;
  /// Optional starting basis: one variable index per row (column
  /// generation and direct solves only; ignored when it is not a feasible
  /// basis).
  std::vector<std::size_t> warm_basis;
  /// Exact solves first run a double-precision copy and warm-start from its
  /// optimal basis; the exact run then certifies or keeps pivoting.
  bool float_guide = true;
  std::vector<std::size_t> warm_standard_basis;
};

/// A column proposed by a pricer: cost and sparse entries over master rows.
template <Scalar T>
struct GeneratedColumn {
  T cost;
  SparseRow<T> entries;
  std::string name;
};

/// Pricer callback: given current duals (in LpSolution::dual convention) and
/// whether the solver is in phase one, return candidate columns (possibly
/// none). The solver re-checks reduced costs itself.
template <Scalar T>
using Pricer = std::function<std::vector<GeneratedColumn<T>>(const Vec<T>& duals, bool phase_one)>;

namespace detail {

// min c.x  s.t.  A x = b (b >= 0), x >= 0, with columns appended at will.
template <Scalar T>
class StandardSimplex {
 public:
  enum class Kind { Structural, Slack, Artificial };

  StandardSimplex(std::size_t m, Vec<T> b, const SolveOptions& opt) : m_(m), b_(std::move(b)), opt_(opt) {}

  std::size_t add_column(const T& cost, Vec<T> col, Kind kind) {
    cols_.push_back(std::move(col));
    cost_.push_back(cost);
    kind_.push_back(kind);
    is_basic_.push_back(false);
    return cols_.size() - 1;
  }

  bool same_column(std::size_t j, const Vec<T>& col, const T& cost) const {
    return cost_[j] == cost && cols_[j] == col;
  }
  std::size_t num_columns() const { return cols_.size(); }

  // Builds the initial basis from identity slack columns where possible,
  // adding artificials elsewhere.
  void init_basis() {
    basis_.assign(m_, npos);
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (kind_[j] != Kind::Slack) continue;
      std::optional<std::size_t> row;
      bool unit = true;
      for (std::size_t i = 0; i < m_; ++i) {
        if (is_zero(cols_[j][i])) continue;
        if (row || !(cols_[j][i] == T(1))) unit = false;
        row = i;
      }
      if (unit && row && basis_[*row] == npos) basis_[*row] = j;
    }
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] == npos) {
        Vec<T> e(m_, T(0));
        e[i] = T(1);
        basis_[i] = add_column(T(0), std::move(e), Kind::Artificial);
      }
    for (auto j : basis_) is_basic_[j] = true;
    binv_ = Matrix<T>::identity(m_);
    xb_ = b_;
  }

  // Starts from the given structural columns as basis when they form a
  // nonsingular, primal feasible basis; otherwise leaves state untouched.
  bool warm_start(const std::vector<std::size_t>& cols) {
    if (cols.size() != m_) return false;
    Matrix<T> bm(m_, m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (cols[r] >= cols_.size()) return false;
      for (std::size_t i = 0; i < m_; ++i) bm(i, r) = cols_[cols[r]][i];
    }
    auto inv = inverse(bm);
    if (!inv) return false;
    Vec<T> xb = *inv * b_;
    for (const auto& v : xb)
      if (sgn(v) < 0) return false;
    basis_ = cols;
    for (auto j : basis_) is_basic_[j] = true;
    binv_ = std::move(*inv);
    xb_ = std::move(xb);
    return true;
  }

  // Returns false when phase one proves infeasibility.
  bool phase_one(const Pricer<T>* pricer, const std::function<Vec<T>(const Vec<T>&)>& to_user_duals) {
    phase_ = 1;
    bool any_art = false;
    for (auto j : basis_) any_art |= kind_[j] == Kind::Artificial;
    if (any_art) {
      auto st = iterate(pricer, to_user_duals);
      if (st == LpStatus::Unbounded) throw Error(Errc::NumericFailure, "phase one reported unbounded");
      T infeas(0);
      for (std::size_t r = 0; r < m_; ++r)
        if (kind_[basis_[r]] == Kind::Artificial) infeas += xb_[r];
      if (sgn(infeas) > 0) return false;
    }
    drive_out_artificials();
    return true;
  }

  LpStatus phase_two(const Pricer<T>* pricer, const std::function<Vec<T>(const Vec<T>&)>& to_user_duals) {
    phase_ = 2;
    if constexpr (!is_exact_v<T>) perturb();
    return iterate(pricer, to_user_duals);
  }

  Vec<T> primal() const {
    Vec<T> x(cols_.size(), T(0));
    for (std::size_t r = 0; r < m_; ++r) x[basis_[r]] = xb_[r];
    return x;
  }

  // Duals of the phase-two objective.
  Vec<T> duals() const { return compute_duals(2); }

  std::size_t iterations() const { return iterations_; }
  std::size_t generated() const { return generated_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const T& phase_cost(std::size_t j, int phase) const {
    static const T zero(0), one(1);
    if (phase == 1) return kind_[j] == Kind::Artificial ? one : zero;
    return kind_[j] == Kind::Artificial ? zero : cost_[j];
  }

  Vec<T> compute_duals(int phase) const {
    Vec<T> y(m_, T(0));
    for (std::size_t r = 0; r < m_; ++r) {
      const T& c = phase_cost(basis_[r], phase);
      if (is_zero(c)) continue;
      for (std::size_t i = 0; i < m_; ++i)
        if (!is_zero(binv_(r, i))) y[i] += c * binv_(r, i);
    }
    return y;
  }

  Vec<T> ftran(const Vec<T>& a) const {
    Vec<T> alpha(m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (is_zero(a[i])) continue;
      for (std::size_t r = 0; r < m_; ++r)
        if (!is_zero(binv_(r, i))) alpha[r] += binv_(r, i) * a[i];
    }
    return alpha;
  }

  T reduced_cost(std::size_t j, const Vec<T>& y) const {
    T d = phase_cost(j, phase_);
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_zero(cols_[j][i]) && !is_zero(y[i])) d -= y[i] * cols_[j][i];
    return d;
  }

  bool eligible(std::size_t j) const {
    if (is_basic_[j]) return false;
    return phase_ == 1 || kind_[j] != Kind::Artificial;
  }

  void pivot(std::size_t r, std::size_t q, const Vec<T>& alpha) {
    T inv = T(1) / alpha[r];
    for (std::size_t i = 0; i < m_; ++i) binv_(r, i) *= inv;
    xb_[r] *= inv;
    for (std::size_t s = 0; s < m_; ++s) {
      if (s == r || is_zero(alpha[s])) continue;
      const T f = alpha[s];
      for (std::size_t i = 0; i < m_; ++i)
        if (!is_zero(binv_(r, i))) binv_(s, i) -= f * binv_(r, i);
      xb_[s] -= f * xb_[r];
    }
    is_basic_[basis_[r]] = false;
    basis_[r] = q;
    is_basic_[q] = true;
    ++iterations_;
    if constexpr (!is_exact_v<T>) {
      if (++since_refactor_ >= opt_.refactor_every) refactor();
    }
    if (iterations_ > opt_.max_iterations) throw Error(Errc::NumericFailure, "simplex iteration limit reached");
  }

  // Float only: lifts basic values by small distinct amounts against
  // degenerate stalling; finalize() restores the true right-hand side.
  void perturb() {
    b_true_ = b_;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    for (auto& v : xb_) v += T(1e2 * opt_.tolerance * u(rng));
    b_.assign(m_, T(0));
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t i = 0; i < m_; ++i)
        if (!is_zero(cols_[basis_[r]][i])) b_[i] += cols_[basis_[r]][i] * xb_[r];
  }

  void refactor() {
    since_refactor_ = 0;
    Matrix<T> bm(m_, m_);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t i = 0; i < m_; ++i) bm(i, r) = cols_[basis_[r]][i];
    auto inv = inverse(bm);
    if (!inv) throw Error(Errc::NumericFailure, "basis matrix became singular");
    binv_ = std::move(*inv);
    xb_ = binv_ * b_;
    for (auto& v : xb_)
      if (sgn(v) < 0) {
        if (to_double(v) < -1e3 * opt_.tolerance) throw Error(Errc::NumericFailure, "lost primal feasibility");
        v = T(0);
      }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (kind_[basis_[r]] != Kind::Artificial) continue;
      std::optional<std::size_t> best;
      T best_e(0);
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (is_basic_[j] || kind_[j] == Kind::Artificial) continue;
        T e(0);
        for (std::size_t i = 0; i < m_; ++i)
          if (!is_zero(binv_(r, i)) && !is_zero(cols_[j][i])) e += binv_(r, i) * cols_[j][i];
        if (is_zero(e)) continue;
        if (!best || best_e < abs(e)) best = j, best_e = abs(e);
        if constexpr (is_exact_v<T>) break;
      }
      if (best) pivot(r, *best, ftran(cols_[*best]));
      // Otherwise row r is redundant; its artificial stays basic at zero.
    }
  }

  std::optional<std::size_t> choose_entering(const Vec<T>& y, bool bland) {
    std::optional<std::size_t> best;
    T best_score(0);
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (!eligible(j)) continue;
      T d = reduced_cost(j, y);
      if (sgn(d) >= 0) continue;
      if (bland) return j;
      T score = -d;
      if (opt_.rule == PivotRule::SteepestEdge) {
        Vec<T> a = ftran(cols_[j]);
        T norm(1);
        for (const auto& v : a) norm += v * v;
        score = d * d / norm;
      }
      if (!best || best_score < score) {
        best = j;
        best_score = score;
      }
    }
    return best;
  }

  bool zero_artificial(std::size_t r, const T& a) const {
    return phase_ == 2 && kind_[basis_[r]] == Kind::Artificial && !is_zero(a);
  }

  std::optional<std::size_t> choose_leaving(const Vec<T>& alpha) const {
    std::optional<std::size_t> leave;
    if constexpr (is_exact_v<T>) {
      T best_ratio(0);
      for (std::size_t r = 0; r < m_; ++r) {
        bool za = zero_artificial(r, alpha[r]);
        if (!za && sgn(alpha[r]) <= 0) continue;
        T ratio = za ? T(0) : xb_[r] / alpha[r];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    } else {
      // Two passes: bound the step with relaxed ratios, then take the
      // largest pivot among rows within that bound.
      const double piv = 1e2 * opt_.tolerance, tol = opt_.tolerance;
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        double a = alpha[r].value();
        if (zero_artificial(r, alpha[r]) && std::abs(a) > piv) bound = 0;
        else if (a > piv) bound = std::min(bound, (std::max(xb_[r].value(), 0.0) + tol) / a);
      }
      double best_a = 0;
      for (std::size_t r = 0; r < m_; ++r) {
        double a = alpha[r].value();
        if (zero_artificial(r, alpha[r]) && std::abs(a) > piv) {
          if (!leave || std::abs(a) > best_a) leave = r, best_a = std::abs(a);
          continue;
        }
        if (bound == 0 || a <= piv) continue;
        if (std::max(xb_[r].value(), 0.0) / a <= bound && (!leave || a > best_a)) leave = r, best_a = a;
      }
    }
    return leave;
  }

  LpStatus iterate(const Pricer<T>* pricer, const std::function<Vec<T>(const Vec<T>&)>& to_user_duals) {
    std::size_t degenerate_run = 0;
    for (;;) {
      Vec<T> y = compute_duals(phase_);
      bool bland = opt_.rule == PivotRule::Bland || degenerate_run > 50;
      auto q = choose_entering(y, bland);
      if (!q && pricer && *pricer) {
        auto cands = (*pricer)(to_user_duals(y), phase_ == 1);
        for (auto& c : cands) {
          Vec<T> dense = to_standard_(c);
          T std_cost = cost_sign_ < 0 ? -c.cost : c.cost;
          T d = phase_ == 1 ? T(0) : std_cost;
          for (std::size_t i = 0; i < m_; ++i)
            if (!is_zero(dense[i])) d -= y[i] * dense[i];
          if (sgn(d) >= 0) continue;
          for (std::size_t j = 0; j < cols_.size(); ++j)
            if (kind_[j] == Kind::Structural && same_column(j, dense, std_cost))
              throw Error(Errc::PricerStall, "pricer repeated column '" + c.name + "'");
          std::size_t id = add_column(std_cost, std::move(dense), Kind::Structural);
          ++generated_;
          if (on_new_column_) on_new_column_(id, c);
          if (!q) q = id;
        }
      }
      if (!q) return LpStatus::Optimal;

      Vec<T> alpha = ftran(cols_[*q]);
      auto leave = choose_leaving(alpha);
      T best_ratio = leave && sgn(alpha[*leave]) > 0 ? xb_[*leave] / alpha[*leave] : T(0);
      if (!leave) return LpStatus::Unbounded;
      degenerate_run = is_zero(best_ratio) ? degenerate_run + 1 : 0;
      pivot(*leave, *q, alpha);
    }
  }

 public:
  // Hooks used by the general-form wrapper for generated columns.
  std::function<Vec<T>(const GeneratedColumn<T>&)> to_standard_;
  std::function<void(std::size_t, const GeneratedColumn<T>&)> on_new_column_;
  int cost_sign_ = 1;

  void finalize() {
    if constexpr (!is_exact_v<T>) {
      if (b_true_) b_ = *std::exchange(b_true_, std::nullopt);
      refactor();
    }
  }

 private:
  std::size_t m_;
  Vec<T> b_;
  std::optional<Vec<T>> b_true_;
  SolveOptions opt_;
  std::vector<Vec<T>> cols_;
  std::vector<T> cost_;
  std::vector<Kind> kind_;
  std::vector<bool> is_basic_;
  std::vector<std::size_t> basis_;
  Matrix<T> binv_;
  Vec<T> xb_;
  int phase_ = 1;
  std::size_t iterations_ = 0;
  std::size_t generated_ = 0;
  std::size_t since_refactor_ = 0;
};

template <Scalar T>
bool approx_equal(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double x = to_double(a), y = to_double(b);
    return std::fabs(x - y) <= tol * (1.0 + std::fmax(std::fabs(x), std::fabs(y)));
  }
}

template <Scalar T>
bool approx_sign_ok(const T& a, int required, double tol) {
  // required: +1 means a >= 0, -1 means a <= 0.
  if constexpr (is_exact_v<T>) {
    return required > 0 ? sgn(a) >= 0 : sgn(a) <= 0;
  } else {
    double x = to_double(a);
    return required > 0 ? x >= -tol * (1.0 + std::fabs(x)) : x <= tol * (1.0 + std::fabs(x));
  }
}

// Solves the problem as given (no dualization).
template <Scalar T>
LpSolution<T> solve_direct(const LpProblem<T>& p, const SolveOptions& opt, const Pricer<T>* pricer,
                           LpProblem<T>* grown) {
  const std::size_t m = p.num_rows();
  const bool maximize = p.sense == Sense::Maximize;
  std::vector<int> flip(m, 1);
  Vec<T> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(p.rows[i].rhs) < 0) flip[i] = -1;
    b[i] = flip[i] < 0 ? -p.rows[i].rhs : p.rows[i].rhs;
  }
  StandardSimplex<T> sx(m, b, opt);

  // Column layout: per variable one (or two, if free) structural columns.
  struct VarCols {
    std::size_t pos;
    std::optional<std::size_t> neg;
  };
  std::vector<VarCols> var_cols;
  std::vector<Vec<T>> dense_cols(p.num_vars(), Vec<T>(m, T(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [j, v] : p.rows[i].coeffs) dense_cols[j][i] += flip[i] < 0 ? -v : v;
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    T c = maximize ? -p.objective[j] : p.objective[j];
    VarCols vc{sx.add_column(c, dense_cols[j], StandardSimplex<T>::Kind::Structural), std::nullopt};
    if (p.free_var[j]) {
      Vec<T> neg = dense_cols[j];
      for (auto& v : neg) v = -v;
      vc.neg = sx.add_column(-c, std::move(neg), StandardSimplex<T>::Kind::Structural);
    }
    var_cols.push_back(vc);
  }
  dense_cols.clear();
  for (std::size_t i = 0; i < m; ++i) {
    if (p.rows[i].kind == RowKind::Eq) continue;
    Vec<T> e(m, T(0));
    T s = p.rows[i].kind == RowKind::Le ? T(1) : T(-1);
    e[i] = flip[i] < 0 ? -s : s;
    sx.add_column(T(0), std::move(e), StandardSimplex<T>::Kind::Slack);
  }

  auto to_user = [&](const Vec<T>& ys) {
    Vec<T> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      y[i] = flip[i] < 0 ? -ys[i] : ys[i];
      if (maximize) y[i] = -y[i];
    }
    return y;
  };
  sx.to_standard_ = [&](const GeneratedColumn<T>& c) {
    Vec<T> col(m, T(0));
    for (const auto& [i, v] : c.entries) {
      if (i >= m) throw Error(Errc::DimensionMismatch, "generated column references unknown row");
      col[i] += flip[i] < 0 ? -v : v;
    }
    return col;
  };
  // Generated columns become new nonnegative variables of the (grown) problem.
  LpProblem<T> local;
  LpProblem<T>& g = grown ? *grown : local;
  if (grown) g = p;
  sx.on_new_column_ = [&](std::size_t id, const GeneratedColumn<T>& c) {
    std::size_t v = g.add_variable(c.cost, false, c.name);
    for (const auto& [i, val] : c.entries) g.rows[i].coeffs.push_back({v, val});
    var_cols.push_back({id, std::nullopt});
  };
  sx.cost_sign_ = maximize ? -1 : 1;

  bool warm = !opt.warm_standard_basis.empty() && sx.warm_start(opt.warm_standard_basis);
  if (!warm && !opt.warm_basis.empty()) {
    std::vector<std::size_t> cols;
    for (auto j : opt.warm_basis)
      if (j < var_cols.size()) cols.push_back(var_cols[j].pos);
    warm = sx.warm_start(cols);
  }
  if (!warm) sx.init_basis();
  LpSolution<T> sol;
  if (!sx.phase_one(pricer, to_user)) {
    sol.status = LpStatus::Infeasible;
    sol.iterations = sx.iterations();
    return sol;
  }
  sol.status = sx.phase_two(pricer, to_user);
  sx.finalize();
  sol.iterations = sx.iterations();
  sol.columns_generated = sx.generated();
  if (sol.status != LpStatus::Optimal) return sol;

  Vec<T> xs = sx.primal();
  sol.primal.assign(var_cols.size(), T(0));
  for (std::size_t j = 0; j < var_cols.size(); ++j) {
    sol.primal[j] = xs[var_cols[j].pos];
    if (var_cols[j].neg) sol.primal[j] -= xs[*var_cols[j].neg];
  }
  sol.dual = to_user(sx.duals());
  sol.standard_basis = sx.basis();
  for (auto col : sx.basis())
    for (std::size_t j = 0; j < var_cols.size(); ++j)
      if (var_cols[j].pos == col) sol.basis.push_back(j);
  const LpProblem<T>& full = grown ? *grown : p;
  sol.objective = T(0);
  for (std::size_t j = 0; j < full.num_vars(); ++j) sol.objective += full.objective[j] * sol.primal[j];
  return sol;
}

// Dual of p, always posed as a maximization when p minimizes (and vice
// versa). Variables of the dual correspond to rows of p; rows of the dual
// correspond to variables of p.
template <Scalar T>
LpProblem<T> dual_problem(const LpProblem<T>& p, std::vector<int>& var_sign) {
  // Work with p as "min c.x": for max problems negate c (restored by caller).
  const bool maximize = p.sense == Sense::Maximize;
  LpProblem<T> d;
  d.sense = Sense::Maximize;
  var_sign.assign(p.num_rows(), 1);
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    const auto& r = p.rows[i];
    // min problem: Ge rows -> y >= 0, Le rows -> y <= 0 (y = -y'), Eq -> free.
    int s = r.kind == RowKind::Le ? -1 : 1;
    var_sign[i] = s;
    d.add_variable(s < 0 ? -r.rhs : r.rhs, r.kind == RowKind::Eq, "y_" + r.name);
  }
  std::vector<SparseRow<T>> cols(p.num_vars());
  for (std::size_t i = 0; i < p.num_rows(); ++i)
    for (const auto& [j, v] : p.rows[i].coeffs) cols[j].push_back({i, var_sign[i] < 0 ? -v : v});
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    T c = maximize ? -p.objective[j] : p.objective[j];
    d.add_row(std::move(cols[j]), p.free_var[j] ? RowKind::Eq : RowKind::Le, c, "c_" + p.var_names[j]);
  }
  return d;
}

template <Scalar T>
LpProblem<Float> to_float_problem(const LpProblem<T>& p) {
  LpProblem<Float> f;
  f.sense = p.sense;
  f.free_var = p.free_var;
  f.var_names = p.var_names;
  for (const auto& c : p.objective) f.objective.push_back(Float(to_double(c)));
  for (const auto& r : p.rows) {
    SparseRow<Float> row;
    for (const auto& [j, v] : r.coeffs) row.push_back({j, Float(to_double(v))});
    f.rows.push_back({std::move(row), r.kind, Float(to_double(r.rhs)), r.name});
  }
  return f;
}

// Direct solve; exact fields try a float-guided warm start first.
template <Scalar T>
LpSolution<T> solve_guided(const LpProblem<T>& p, const SolveOptions& opt) {
  if constexpr (is_exact_v<T>) {
    if (opt.float_guide && opt.warm_standard_basis.empty() && opt.warm_basis.empty()) {
      SolveOptions fo = opt;
      fo.rule = PivotRule::Dantzig;
      SolveOptions eo = opt;
      try {
        auto fs = solve_direct<Float>(to_float_problem(p), fo, nullptr, nullptr);
        if (fs.status == LpStatus::Optimal) eo.warm_standard_basis = fs.standard_basis;
      } catch (const Error&) {
      }
      return solve_direct<T>(p, eo, nullptr, nullptr);
    }
  }
  return solve_direct<T>(p, opt, nullptr, nullptr);
}

}  // namespace detail

/// Checks primal feasibility, dual feasibility and objective equality; exact
/// for exact fields, within opt.tolerance for Float.
template <Scalar T>
bool verify_solution(const LpProblem<T>& p, const LpSolution<T>& s, double tol) {
  using detail::approx_equal;
  using detail::approx_sign_ok;
  if (s.status != LpStatus::Optimal) return false;
  if (s.primal.size() != p.num_vars() || s.dual.size() != p.num_rows()) return false;
  const bool maximize = p.sense == Sense::Maximize;
  for (std::size_t j = 0; j < p.num_vars(); ++j)
    if (!p.free_var[j] && !approx_sign_ok(s.primal[j], 1, tol)) return false;
  Vec<T> reduced = p.objective;
  T by(0), cx(0);
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    const auto& r = p.rows[i];
    T lhs(0);
    for (const auto& [j, v] : r.coeffs) {
      lhs += v * s.primal[j];
      reduced[j] -= v * s.dual[i];
    }
    T slack = lhs - r.rhs;
    if (r.kind == RowKind::Eq && !approx_equal(lhs, r.rhs, tol)) return false;
    if (r.kind == RowKind::Le && !approx_sign_ok(slack, -1, tol)) return false;
    if (r.kind == RowKind::Ge && !approx_sign_ok(slack, 1, tol)) return false;
    // Dual sign: min -> Ge:+, Le:-; max -> reversed.
    int need = 0;
    if (r.kind == RowKind::Ge) need = maximize ? -1 : 1;
    if (r.kind == RowKind::Le) need = maximize ? 1 : -1;
    if (need != 0 && !approx_sign_ok(s.dual[i], need, tol)) return false;
    by += r.rhs * s.dual[i];
  }
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    cx += p.objective[j] * s.primal[j];
    if (p.free_var[j]) {
      if (!approx_equal(reduced[j], T(0), tol)) return false;
    } else if (!approx_sign_ok(reduced[j], maximize ? -1 : 1, tol)) {
      return false;
    }
  }
  return approx_equal(cx, by, tol) && approx_equal(cx, s.objective, tol);
}

/// Solves a general-form LP. With Dualize::Auto the dual is solved instead
/// when the problem has many more rows than variables; primal and dual of
/// the returned solution always refer to p.
template <Scalar T>
LpSolution<T> solve(const LpProblem<T>& p, const SolveOptions& opt = {}) {
  std::size_t nv = 0;
  for (std::size_t j = 0; j < p.num_vars(); ++j) nv += p.free_var[j] ? 2 : 1;
  bool use_dual = opt.dualize == Dualize::Always || (opt.dualize == Dualize::Auto && p.num_rows() > 2 * nv + 8);
  LpSolution<T> sol;
  if (!use_dual) {
    sol = detail::solve_guided<T>(p, opt);
  } else {
    std::vector<int> var_sign;
    LpProblem<T> d = detail::dual_problem(p, var_sign);
    LpSolution<T> ds = detail::solve_guided<T>(d, opt);
    sol.iterations = ds.iterations;
    sol.dualized = true;
    if (ds.status == LpStatus::Unbounded) {
      sol.status = LpStatus::Infeasible;
    } else if (ds.status == LpStatus::Infeasible) {
      // Primal is unbounded or infeasible; resolve directly to tell which.
      sol = detail::solve_direct<T>(p, opt, nullptr, nullptr);
    } else {
      const bool maximize = p.sense == Sense::Maximize;
      sol.status = LpStatus::Optimal;
      sol.primal = ds.dual;
      sol.dual.resize(p.num_rows());
      for (std::size_t i = 0; i < p.num_rows(); ++i) {
        T y = var_sign[i] < 0 ? -ds.primal[i] : ds.primal[i];
        sol.dual[i] = maximize ? -y : y;
      }
      sol.objective = T(0);
      for (std::size_t j = 0; j < p.num_vars(); ++j) sol.objective += p.objective[j] * sol.primal[j];
    }
  }
  if (sol.status == LpStatus::Optimal) {
    sol.verified = verify_solution(p, sol, opt.tolerance);
    if (!sol.verified) throw Error(Errc::NumericFailure, "LP solution failed strong-duality verification");
  }
  return sol;
}

/// Column generation: `master` holds the initial columns; the pricer adds
/// columns (as nonnegative variables) until none has negative reduced cost.
/// The returned primal covers the master's variables followed by every
/// generated column, in generation order; `grown` (if given) receives the
/// final master.
template <Scalar T>
LpSolution<T> solve_with_column_generation(const LpProblem<T>& master, const Pricer<T>& pricer,
                                           const SolveOptions& opt = {}, LpProblem<T>* grown = nullptr) {
  LpProblem<T> local;
  LpProblem<T>* g = grown ? grown : &local;
  LpSolution<T> sol = detail::solve_direct(master, opt, &pricer, g);
  if (sol.status == LpStatus::Optimal) {
    sol.verified = verify_solution(*g, sol, opt.tolerance);
    if (!sol.verified) throw Error(Errc::NumericFailure, "column generation solution failed verification");
  }
  return sol;
}

/// Plain-text dump: one constraint per line with exact literals.
template <Scalar T>
void write_lp_text(std::ostream& os, const LpProblem<T>& p) {
  os << (p.sense == Sense::Minimize ? "minimize" : "maximize");
  for (std::size_t j = 0; j < p.num_vars(); ++j)
    if (!is_zero(p.objective[j])) os << " " << to_literal(p.objective[j]) << "*" << p.var_names[j];
  os << "\n";
  for (const auto& r : p.rows) {
    os << r.name << ":";
    for (const auto& [j, v] : r.coeffs) os << " " << to_literal(v) << "*" << p.var_names[j];
    os << (r.kind == RowKind::Le ? " <= " : r.kind == RowKind::Ge ? " >= " : " = ") << to_literal(r.rhs) << "\n";
  }
  for (std::size_t j = 0; j < p.num_vars(); ++j)
    os << p.var_names[j] << (p.free_var[j] ? " free" : " >= 0") << "\n";
}

}  // namespace lipfree
