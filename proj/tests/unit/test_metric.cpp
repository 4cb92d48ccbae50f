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

#include <algorithm>
#include <random>

#include "lipfree/ae.hpp"
#include "lipfree/metric.hpp"
#include "oracles.hpp"

namespace lipfree {
namespace {

using R = Rational;
using S = QSqrt2;

Matrix<R> ints(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<R> m(rows.size(), rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = R(v);
    ++i;
  }
  return m;
}

// Distances of normal-form points built straight from the rectangle-plus-legs
// picture: corners y1..y4 with sides ell (y1y2, y3y4) and w (y2y3, y4y1).
template <Scalar T>
Matrix<T> normal_form_oracle(const std::array<T, 4>& legs, const T& ell, const T& w) {
  auto rect = [&](std::size_t i, std::size_t j) -> T {
    if (i == j) return T(0);
    auto a = std::min(i, j), b = std::max(i, j);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return ell;
    if ((a == 1 && b == 2) || (a == 0 && b == 3)) return w;
    return ell + w;
  };
  Matrix<T> m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) m(i, j) = legs[i] + rect(i, j) + legs[j];
  return m;
}

TEST(Validate, AcceptsEquilateralAndRectangle) {
  EXPECT_NO_THROW(DistanceMatrix<R>::validate(ints({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})));
  EXPECT_NO_THROW(ae4_rectangle<S>());
}

TEST(Validate, NamesTriangleViolation) {
  try {
    DistanceMatrix<R>::validate(ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TriangleViolation);
    // d(1,3) > d(1,2) + d(2,3), one-based (1, 3, 2).
    EXPECT_EQ(e.where(), (std::vector<std::size_t>{0, 2, 1}));
  }
}

TEST(Validate, OtherAxioms) {
  auto code = [](Matrix<R> m) {
    try {
      DistanceMatrix<R>::validate(std::move(m));
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Infeasible;
  };
  EXPECT_EQ(code(ints({{0, 1}, {2, 0}})), Errc::NotSymmetric);
  EXPECT_EQ(code(ints({{1, 1}, {1, 0}})), Errc::NonzeroDiagonal);
  EXPECT_EQ(code(ints({{0, 0}, {0, 0}})), Errc::NonPositiveDistance);
  EXPECT_EQ(code(Matrix<R>(2, 3)), Errc::NotSquare);
}

TEST(DiamSep, Examples) {
  auto e = diam_sep(equilateral<R>(3, R(1)));
  EXPECT_EQ(e.diam, R(1));
  EXPECT_EQ(e.sep, R(1));
  auto x0 = diam_sep(ae4_rectangle<S>());
  EXPECT_EQ(x0.diam, S(1) + S::sqrt2());
  EXPECT_EQ(x0.sep, S(2));
  EXPECT_THROW(diam_sep(DistanceMatrix<R>::validate(Matrix<R>(1, 1))), Error);
}

TEST(Constructors, NPodLeavesAreEquilateral) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto pod = npod<R>(n, R(3, 2));
    EXPECT_EQ(pod.space.size(), n + 1);
    auto leaves = pod.space.restrict_to(pod.leaves);
    EXPECT_EQ(leaves.matrix(), equilateral<R>(n, R(3)).matrix());
    for (auto l : pod.leaves) EXPECT_EQ(pod.space(l, pod.center), R(3, 2));
  }
  EXPECT_EQ(equilateral<R>(2, R(1)).matrix(), ints({{0, 1}, {1, 0}}));
  EXPECT_THROW(npod<R>(1, R(1)), Error);
}

TEST(FourPoint, EquilateralAndRectangle) {
  auto p = four_point_params(equilateral<R>(4, R(3)));
  for (const auto& l : p.legs()) EXPECT_EQ(l, R(3, 2));
  EXPECT_EQ(p.ell, R(0));
  EXPECT_EQ(p.w, R(0));

  auto q = four_point_params(ae4_rectangle<S>());
  EXPECT_EQ(q.ell, S::sqrt2() - S(1));
  EXPECT_EQ(q.w, S(0));
  for (const auto& l : q.legs()) EXPECT_EQ(l, S(1));
}

TEST(FourPoint, RecoversSymbolicInstance) {
  std::array<R, 4> legs{R(1), R(2), R(3), R(4)};
  auto x = DistanceMatrix<R>::validate(normal_form_oracle<R>(legs, R(5), R(2)));
  auto p = four_point_params(x);
  EXPECT_EQ(p.ell, R(5));
  EXPECT_EQ(p.w, R(2));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(p.legs()[k], legs[p.relabeling[k]]);
  auto hull = injective_hull_superspace(x);
  EXPECT_EQ(hull.space.size(), 8U);
}

TEST(FourPoint, RoundTripOnRandomMetrics) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    auto x = t % 2 ? testing::random_metric<R>(rng, 4) : testing::random_path_metric<R>(rng, 4);
    auto p = four_point_params(x);
    EXPECT_FALSE(p.ell < p.w);
    EXPECT_FALSE(p.w < R(0));
    for (const auto& l : p.legs()) EXPECT_FALSE(l < R(0));
    Matrix<R> nf = normal_form_oracle<R>(p.legs(), p.ell, p.w);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(nf(i, j), x(p.relabeling[i], p.relabeling[j]));
  }
}

TEST(InjectiveHull, ContainsXIsometrically) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    auto x = t % 2 ? testing::random_metric<R>(rng, 4) : testing::random_path_metric<R>(rng, 4);
    auto h = injective_hull_superspace(x);
    EXPECT_LE(h.space.size(), 8U);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(h.space(h.x_indices[i], h.x_indices[j]), x(i, j));
  }
}

TEST(InjectiveHull, Examples) {
  auto h = injective_hull_superspace(equilateral<R>(4, R(1)));
  ASSERT_EQ(h.space.size(), 5U);
  std::size_t center = 10;
  for (std::size_t k = 0; k < 5; ++k)
    if (std::find(h.x_indices.begin(), h.x_indices.end(), k) == h.x_indices.end()) center = k;
  ASSERT_LT(center, 5U);
  for (auto xi : h.x_indices) EXPECT_EQ(h.space(xi, center), R(1, 2));

  auto h0 = injective_hull_superspace(ae4_rectangle<S>());
  EXPECT_EQ(h0.space.size(), 6U);
  std::vector<std::size_t> extra;
  for (std::size_t k = 0; k < 6; ++k)
    if (std::find(h0.x_indices.begin(), h0.x_indices.end(), k) == h0.x_indices.end()) extra.push_back(k);
  ASSERT_EQ(extra.size(), 2U);
  EXPECT_EQ(h0.space(extra[0], extra[1]), S::sqrt2() - S(1));
}

TEST(Trees, PathMetric) {
  WeightedTree<R> t{{"p", "q", "r"}, {{0, 1, R(1)}, {1, 2, R(2)}}, 0};
  auto m = tree_metric(t);
  EXPECT_EQ(m(0, 2), R(3));
}

TEST(Trees, StarTreeOnY0MatchesLinfMetric) {
  // x1,x2 hang off y1, x3,x4 off y2, unit legs; y1y2 = sqrt2 - 1.
  S one(1), g = S::sqrt2() - S(1);
  WeightedTree<S> t{{"x1", "x2", "x3", "x4", "y1", "y2"},
                    {{0, 4, one}, {1, 4, one}, {2, 5, one}, {3, 5, one}, {4, 5, g}},
                    0};
  EXPECT_EQ(tree_metric(t).matrix(), ae4_rectangle<S>(true).matrix());
}

TEST(Trees, EquilateralDetectsThreePod) {
  auto t = detect_tree(equilateral<R>(3, R(2)));
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->size(), 4U);
  for (const auto& e : t->edges) EXPECT_EQ(e.weight, R(1));
  auto m = tree_metric(*t);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), i == j ? R(0) : R(2));
}

TEST(Trees, DetectRoundTripOnRandomTrees) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    auto tree = testing::random_tree<R>(rng, 2 + t % 6);
    auto x = tree_metric(tree);
    auto found = detect_tree(x);
    ASSERT_TRUE(found.has_value());
    auto y = tree_metric(*found);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) EXPECT_EQ(y(i, j), x(i, j));
  }
}

TEST(Trees, RejectsNonTreeMetric) {
  // A 4-cycle with unit edges fails the four-point condition.
  auto c4 = DistanceMatrix<R>::validate(ints({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}));
  EXPECT_FALSE(detect_tree(c4).has_value());
}

TEST(Trees, CheckRejectsBadTrees) {
  WeightedTree<R> cyc{{"a", "b", "c"}, {{0, 1, R(1)}, {1, 2, R(1)}, {2, 0, R(1)}}, 0};
  EXPECT_THROW(cyc.check(), Error);
  WeightedTree<R> neg{{"a", "b"}, {{0, 1, R(-1)}}, 0};
  EXPECT_THROW(neg.check(), Error);
  WeightedTree<R> split{{"a", "b", "c"}, {{0, 1, R(1)}}, 0};
  EXPECT_THROW(split.check(), Error);
}

TEST(Invariance, RelabelingAndScaling) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    auto x = testing::random_metric<R>(rng, 4);
    std::vector<std::size_t> perm{2, 0, 3, 1};
    auto px = x.permuted(perm);
    auto a = four_point_params(x), b = four_point_params(px);
    EXPECT_EQ(a.ell, b.ell);
    EXPECT_EQ(a.w, b.w);
    auto ha = injective_hull_superspace(x), hb = injective_hull_superspace(px);
    EXPECT_EQ(ha.space.size(), hb.space.size());
    auto sx = x.scaled(R(3, 2));
    EXPECT_EQ(four_point_params(sx).ell, a.ell * R(3, 2));
  }
}

}  // namespace
}  // namespace lipfree
