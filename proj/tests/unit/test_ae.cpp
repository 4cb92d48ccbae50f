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

#include <cmath>
#include <random>

#include "lipfree/ae.hpp"
#include "oracles.hpp"

namespace lipfree {
namespace {

using R = Rational;
using S = QSqrt2;

DistanceMatrix<Float> to_float(const DistanceMatrix<R>& x) {
  Matrix<Float> m(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = Float(to_double(x(i, j)));
  return DistanceMatrix<Float>::validate(m, x.labels());
}

TEST(Bounds, SepDiam) {
  for (std::size_t n = 2; n <= 6; ++n)
    EXPECT_EQ(sep_diam_upper(equilateral<R>(n, R(3))), R(2) - R(2) / R(static_cast<long>(n)));
  S r2 = S::sqrt2();
  EXPECT_EQ(sep_diam_upper(ae4_rectangle<S>()), S(3) * (r2 + S(1)) / S(4));
}

TEST(Bounds, Klb) {
  S r2 = S::sqrt2();
  EXPECT_EQ(klb_bound<S>(3, 7), (S(3) + S(6) * r2) / S(7));
  EXPECT_NEAR(to_double(klb_bound<Float>(3, 7)), (3 + 6 * std::sqrt(2.0)) / 7, 1e-12);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(klb_bound<R>(n, n), R(1));
  for (std::size_t d = 2; d <= 6; ++d)
    EXPECT_EQ(klb_bound<R>(d - 1, d), R(2) - R(2) / R(static_cast<long>(d)));
  EXPECT_THROW(klb_bound<R>(3, 2), Error);
  try {
    klb_bound<R>(3, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldUnsupported);
  }
}

TEST(Bounds, KadetsSnobarAndGrunbaum) {
  EXPECT_EQ(kadets_snobar<R>(4), R(2));
  EXPECT_EQ(kadets_snobar<S>(2), S::sqrt2());
  EXPECT_EQ(grunbaum_l1<R>(1), R(1));
  EXPECT_EQ(grunbaum_l1<R>(3), R(3, 2));
  EXPECT_EQ(grunbaum_l1<R>(5), R(15, 8));
  EXPECT_THROW(grunbaum_l1<R>(4), Error);
}

TEST(Bounds, KnownConstantsTable) {
  auto q = known_constants<R>();
  bool saw_missing = false;
  for (const auto& k : q)
    if (k.name == "lambda(3,5)") saw_missing = !k.value.has_value();
  EXPECT_TRUE(saw_missing);
  for (const auto& k : known_constants<S>())
    if (k.name == "lambda(3,5)") EXPECT_EQ(*k.value, (S(5) + S(4) * S::sqrt2()) / S(7));
}

TEST(Lower, Ae3) {
  auto pod = npod<R>(3, R(1));
  PointedSpace<R> y(pod.space, 0);
  PointedSpace<R> x(pod.space.restrict_to(pod.leaves), 0);
  EXPECT_EQ(ae_lower(x, y), R(4, 3));
  EXPECT_EQ(ae_lower(x, x), R(1));
}

TEST(Lower, Ae4RectangleMeetsCertificate) {
  S target = (S(5) + S(4) * S::sqrt2()) / S(7);
  auto x = ae4_rectangle<S>(), y = ae4_rectangle<S>(true);
  EXPECT_EQ(ae_lower(PointedSpace<S>(x, 0), PointedSpace<S>(y, 0)), target);
  auto xf = ae4_rectangle<Float>(), yf = ae4_rectangle<Float>(true);
  EXPECT_GE(to_double(ae_lower(PointedSpace<Float>(xf, 0), PointedSpace<Float>(yf, 0))), to_double(target) - 1e-9);
}

TEST(Upper, Absolute) {
  EXPECT_EQ(ae_upper_absolute(PointedSpace<R>(equilateral<R>(2, R(1)), 0)), R(1));
  EXPECT_EQ(ae_upper_absolute(PointedSpace<R>(equilateral<R>(3, R(1)), 0)), R(4, 3));
  std::mt19937_64 rng(10);
  for (int t = 0; t < 6; ++t) {
    auto tree = testing::random_tree<R>(rng, 4);
    EXPECT_EQ(ae_upper_absolute(tree_space(tree)), grunbaum_l1<R>(3));
  }
}

TEST(Upper, AbsoluteDominatesLower) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 6; ++t) {
    auto big = testing::random_metric<R>(rng, 5);
    PointedSpace<R> x(big.restrict_to({0, 1, 2, 3}), 0);
    PointedSpace<R> y(big, 0);
    EXPECT_LE(ae_lower(x, y), ae_upper_absolute(x));
  }
}

TEST(Pipeline, Rectangle) {
  auto rep = ae4_pipeline(ae4_rectangle<S>());
  S lower = (S(5) + S(4) * S::sqrt2()) / S(7);
  S upper = (S(3) + S(6) * S::sqrt2()) / S(7);
  EXPECT_GE(rep.best_lower, lower);
  EXPECT_LE(rep.best_upper, upper);
  EXPECT_LE(rep.best_lower, rep.best_upper);
  // The hull witness has six points; its klb bound needs sqrt6.
  EXPECT_EQ(rep.lower_bounds[0].witness.size(), 6U);
  bool klb_note = false;
  for (const auto& n : rep.notes) klb_note |= n.find("klb") != std::string::npos;
  EXPECT_TRUE(klb_note);
  bool tree_note = false;
  for (const auto& n : rep.notes) tree_note |= n.find("weighted tree") != std::string::npos;
  EXPECT_FALSE(tree_note);
}

TEST(Pipeline, EquilateralFour) {
  auto rep = ae4_pipeline(equilateral<R>(4, R(2)));
  EXPECT_EQ(rep.best_lower, R(3, 2));
  EXPECT_EQ(rep.best_upper, R(3, 2));
}

TEST(Pipeline, PathTree) {
  WeightedTree<R> t{{"a", "b", "c", "d"}, {{0, 1, R(1)}, {1, 2, R(1)}, {2, 3, R(1)}}, 0};
  auto rep = ae4_pipeline(tree_metric(t));
  EXPECT_EQ(rep.best_lower, R(1));
  EXPECT_GE(rep.best_upper, R(1));
  bool tree_note = false;
  for (const auto& n : rep.notes) tree_note |= n.find("ae(X) = 1") != std::string::npos;
  EXPECT_TRUE(tree_note);
}

TEST(Pipeline, TreesHaveLowerBoundOne) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 15; ++t) {
    auto tree = testing::random_tree<R>(rng, 4);
    auto rep = ae4_pipeline(tree_metric(tree));
    EXPECT_EQ(rep.best_lower, R(1));
  }
}

TEST(Pipeline, RandomMetricsSandwichAndScale) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 8; ++t) {
    auto x = t % 2 ? testing::random_metric<R>(rng, 4) : testing::random_path_metric<R>(rng, 4);
    auto rep = ae4_pipeline(x);
    EXPECT_LE(rep.best_lower, rep.best_upper);
    EXPECT_LE(rep.best_lower, sep_diam_upper(x));
    auto scaled = ae4_pipeline(x.scaled(R(7, 3)));
    EXPECT_EQ(scaled.best_lower, rep.best_lower);
    EXPECT_EQ(scaled.best_upper, rep.best_upper);
  }
}

TEST(Report, OtherSizes) {
  auto two = ae_report(equilateral<R>(2, R(1)));
  EXPECT_EQ(two.best_lower, R(1));
  EXPECT_EQ(two.best_upper, R(1));
  EXPECT_TRUE(two.lower_bounds[0].exact_for_x);

  for (std::size_t n = 3; n <= 5; ++n) {
    auto rep = ae_report(equilateral<R>(n, R(1)));
    R expect = R(2) - R(2) / R(static_cast<long>(n));
    EXPECT_EQ(rep.best_lower, expect);
    EXPECT_EQ(rep.best_upper, expect);
    EXPECT_EQ(rep.lower_bounds.back().witness.label(0), "x1");
  }
  std::mt19937_64 rng(4);
  auto rep = ae_report(testing::random_metric<R>(rng, 3));
  EXPECT_LE(rep.best_lower, rep.best_upper);
}

TEST(Search, RectangleReachesCertificate) {
  SearchOptions o;
  o.budget = 400;
  o.seed = 3;
  auto r = search_lower_bound(ae4_rectangle<Float>(), o);
  EXPECT_GE(r.value, (5 + 4 * std::sqrt(2.0)) / 7 - 1e-6);
  EXPECT_EQ(r.witness.size(), 6U);
  EXPECT_LE(r.evaluations, o.budget);
}

TEST(Search, EquilateralFindsPodCenter) {
  SearchOptions o;
  o.extra_points = 1;
  o.budget = 100;
  auto r = search_lower_bound(to_float(equilateral<R>(4, R(1))), o);
  EXPECT_NEAR(r.value, 1.5, 1e-9);
}

TEST(Search, BudgetZeroAndDeterminism) {
  SearchOptions o;
  o.budget = 0;
  auto x = ae4_rectangle<Float>();
  EXPECT_NEAR(search_lower_bound(x, o).value, 1.0, 1e-12);
  o.budget = 60;
  o.seed = 9;
  o.threads = 1;
  auto a = search_lower_bound(x, o);
  o.threads = 4;
  auto b = search_lower_bound(x, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.evaluations, b.evaluations);
  EXPECT_THROW(search_lower_bound(to_float(equilateral<R>(3, R(1))), o), Error);
}

TEST(Search, NeverBeatsExactHullValue) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 3; ++t) {
    auto x = testing::random_metric<R>(rng, 4);
    SearchOptions o;
    o.budget = 60;
    auto r = search_lower_bound(to_float(x), o);
    EXPECT_LE(r.value, to_double(ae4_pipeline(x).best_lower) + 1e-7);
  }
}

}  // namespace
}  // namespace lipfree
