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

#include <gtest/gtest.h>

#include <random>

#include "lipfree/polyspace.hpp"
#include "oracles.hpp"

namespace lipfree {
namespace {

using R = Rational;

// l_inf^d written as a custom space with dual extremes +-e_i.
PolyhedralSpace<R> custom_linf(std::size_t d) {
  std::vector<Vec<R>> duals;
  for (std::size_t i = 0; i < d; ++i)
    for (long s : {1L, -1L}) {
      Vec<R> e(d, R(0));
      e[i] = R(s);
      duals.push_back(e);
    }
  return PolyhedralSpace<R>::custom(duals);
}

// Extreme points of B_{L(F)} from the constraints f.(A x) <= 1 by brute force.
std::vector<Vec<R>> brute_operator_vertices(const PolyhedralSpace<R>& f) {
  const std::size_t d = f.dim;
  auto xs = f.ball_extremes();
  auto fs = f.dual_ball_extremes();
  Matrix<R> a(xs.size() * fs.size(), d * d);
  std::size_t r = 0;
  for (const auto& x : xs)
    for (const auto& g : fs) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a(r, i * d + j) = g[i] * x[j];
      ++r;
    }
  return testing::brute_force_vertices(a, Vec<R>(a.rows(), R(1)));
}

Vec<R> flatten(const Matrix<R>& m) { return m.data(); }

Matrix<R> random_matrix(std::mt19937_64& rng, std::size_t d) {
  Matrix<R> m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    auto row = testing::random_vector<R>(rng, d);
    for (std::size_t j = 0; j < d; ++j) m(i, j) = row[j];
  }
  return m;
}

TEST(Norms, LinfL1Custom) {
  Vec<R> x{R(3), R(-4), R(1, 2)};
  EXPECT_EQ(PolyhedralSpace<R>::linf(3).norm(x), R(4));
  EXPECT_EQ(PolyhedralSpace<R>::l1(3).norm(x), R(15, 2));
  EXPECT_EQ(custom_linf(3).norm(x), R(4));
  EXPECT_THROW(PolyhedralSpace<R>::linf(2).norm(x), Error);
}

TEST(Custom, RejectsDegenerateDuals) {
  EXPECT_THROW(PolyhedralSpace<R>::custom({}), Error);
  EXPECT_THROW(PolyhedralSpace<R>::custom({{R(1), R(0)}, {R(-1), R(0)}}), Error);
}

TEST(Custom, DerivedBallExtremes) {
  auto f = custom_linf(2);
  auto xs = f.ball_extremes();
  EXPECT_EQ(xs, PolyhedralSpace<R>::linf(2).ball_extremes());
}

TEST(OperatorBall, SixteenVerticesInTwoDimensions) {
  for (auto f : {PolyhedralSpace<R>::linf(2), PolyhedralSpace<R>::l1(2), custom_linf(2)}) {
    auto vs = operator_ball_vertices(f);
    EXPECT_EQ(vs.size(), 16U);
    std::vector<Vec<R>> flat;
    for (const auto& m : vs) flat.push_back(flatten(m));
    EXPECT_EQ(flat, brute_operator_vertices(f));
  }
}

TEST(OperatorBall, ClosedFormCount) {
  EXPECT_EQ(operator_vertex_count(PolyhedralSpace<R>::linf(3)), 216U);
  EXPECT_EQ(operator_vertex_count(PolyhedralSpace<R>::l1(4)), 4096U);
  EXPECT_EQ(operator_ball_vertices(PolyhedralSpace<R>::linf(3)).size(), 216U);
}

TEST(OperatorBall, L1VerticesAreLinfTransposes) {
  auto a = operator_ball_vertices(PolyhedralSpace<R>::linf(3));
  auto b = operator_ball_vertices(PolyhedralSpace<R>::l1(3));
  std::vector<Vec<R>> at, bf;
  for (const auto& m : a) at.push_back(flatten(m.transpose()));
  for (const auto& m : b) bf.push_back(flatten(m));
  sort_unique(at);
  EXPECT_EQ(at, bf);
}

TEST(OpNorm, MatchesExtremeMaximum) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(rng, 3);
    for (auto f : {PolyhedralSpace<R>::linf(3), PolyhedralSpace<R>::l1(3)}) {
      R best(0);
      for (const auto& x : f.ball_extremes()) best = max_of(best, f.norm(a * x));
      EXPECT_EQ(op_norm(a, f), best);
    }
    EXPECT_EQ(op_norm(a, custom_linf(3)), op_norm(a, PolyhedralSpace<R>::linf(3)));
  }
}

TEST(Nuclear, AgreesWithVertexMaximum) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(rng, 2);
    for (auto f : {PolyhedralSpace<R>::linf(2), PolyhedralSpace<R>::l1(2)}) {
      R best(0);
      for (const auto& v : brute_operator_vertices(f)) {
        Matrix<R> e(2, 2);
        for (std::size_t k = 0; k < 4; ++k) e(k / 2, k % 2) = v[k];
        best = max_of(best, (a * e).trace());
      }
      EXPECT_EQ(nuclear1(a, f), best);
      EXPECT_EQ((a * best_operator_vertex(a, f)).trace(), best);
    }
    EXPECT_EQ(nuclear1(a, custom_linf(2)), nuclear1(a, PolyhedralSpace<R>::linf(2)));
  }
}

TEST(Nuclear, IdentityAndCustomCap) {
  EXPECT_EQ(nuclear1_l1(Matrix<R>::identity(4)), R(4));
  EXPECT_THROW(best_operator_vertex(Matrix<R>::identity(2), custom_linf(2)), Error);
  EXPECT_THROW(nuclear1(Matrix<R>::identity(4), custom_linf(4)), Error);
}

TEST(Subspaces, SumZeroHyperplane) {
  auto e = sum_zero_hyperplane(PolyhedralSpace<R>::linf(3));
  EXPECT_EQ(e.dim(), 2U);
  auto p = orthogonal_projection(e);
  EXPECT_EQ(p * p, p);
  EXPECT_EQ(p.transpose(), p);
  Matrix<R> expect{{R(2, 3), R(-1, 3), R(-1, 3)}, {R(-1, 3), R(2, 3), R(-1, 3)}, {R(-1, 3), R(-1, 3), R(2, 3)}};
  EXPECT_EQ(p, expect);
  auto n = null_basis(e);
  EXPECT_EQ(n.cols(), 1U);
  EXPECT_EQ(e.u.transpose() * n, Matrix<R>(2, 1));
  EXPECT_THROW(SubspaceBasis<R>(PolyhedralSpace<R>::linf(2), Matrix<R>(2, 1)), Error);
}

}  // namespace
}  // namespace lipfree
