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

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipfree/error.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

template <Scalar T>
using Vec = std::vector<T>;

/// Dense row-major matrix over a scalar field.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(const std::vector<Vec<T>>& cols) {
    if (cols.empty()) return {};
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw Error(Errc::DimensionMismatch, "column length mismatch");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vec<T> column(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec<T> operator*(const Matrix& a, const Vec<T>& x) {
    if (a.cols_ != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shape mismatch");
    Vec<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!is_zero(x[j])) y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  return s;
}

template <Scalar T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  return dot<T>(std::span<const T>(a), std::span<const T>(b));
}

/// Frobenius pairing sum_ij a_ij b_ij.
template <Scalar T>
T frobenius(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "frobenius shape");
  return dot<T>(std::span<const T>(a.data()), std::span<const T>(b.data()));
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Exact fields pivot on the first nonzero entry, Float on the
/// entry of largest magnitude.
template <Scalar T>
std::vector<std::size_t> rref(Matrix<T>& m, std::size_t ncols_to_reduce = static_cast<std::size_t>(-1)) {
  std::size_t limit = std::min(ncols_to_reduce, m.cols());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      if constexpr (is_exact_v<T>) {
        piv = i;
        break;
      } else {
        if (!piv || abs(m(*piv, c)) < abs(m(i, c))) piv = i;
      }
    }
    if (!piv) continue;
    if (*piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(*piv, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      m(i, c) = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Scalar T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Solves the square system a x = b; nullopt when a is singular.
template <Scalar T>
std::optional<Vec<T>> solve(const Matrix<T>& a, const Vec<T>& b) {
  if (!a.square() || a.rows() != b.size()) throw Error(Errc::DimensionMismatch, "solve shape");
  std::size_t n = a.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = rref(aug, n);
  if (piv.size() < n) return std::nullopt;
  Vec<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

template <Scalar T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (!a.square()) throw Error(Errc::NotSquare, "inverse of non-square matrix");
  std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  auto piv = rref(aug, n);
  if (piv.size() < n) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Basis of the right kernel {x : a x = 0}, one vector per column of the
/// result (rows = a.cols()).
template <Scalar T>
Matrix<T> null_space(const Matrix<T>& a) {
  Matrix<T> m = a;
  auto piv = rref(m);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec<T> v(a.cols(), T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix<T>(a.cols(), 0);
  return Matrix<T>::from_columns(basis);
}

template <Scalar T>
Matrix<Float> to_float_matrix(const Matrix<T>& m) {
  Matrix<Float> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Float(to_double(m(i, j)));
  return out;
}

template <Scalar T>
std::string to_string(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_literal(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace lipfree
