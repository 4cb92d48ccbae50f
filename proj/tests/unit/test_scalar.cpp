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

#include "lipfree/matrix.hpp"
#include "lipfree/scalar.hpp"
#include "oracles.hpp"

namespace lipfree {
namespace {

TEST(Rational, ParsesAndPrintsLiterals) {
  EXPECT_EQ(to_literal(parse_scalar<Rational>("6/8")), "3/4");
  EXPECT_EQ(to_literal(parse_scalar<Rational>("-2")), "-2");
  EXPECT_EQ(to_literal(parse_scalar<Rational>("1.25")), "5/4");
  EXPECT_EQ(to_literal(parse_scalar<Rational>(" 3 / 9 ")), "1/3");
  EXPECT_THROW(parse_scalar<Rational>("abc"), Error);
  EXPECT_THROW(parse_scalar<Rational>("1/0"), Error);
}

TEST(Rational, RejectsSqrt2Literal) {
  try {
    parse_scalar<Rational>("1+sqrt2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldMismatch);
  }
}

TEST(QSqrt2, CanonicalLiterals) {
  QSqrt2 r2 = QSqrt2::sqrt2();
  EXPECT_EQ(to_literal((QSqrt2(5) + QSqrt2(4) * r2) / QSqrt2(7)), "5/7+4/7*sqrt2");
  EXPECT_EQ(to_literal(r2 - QSqrt2(1)), "-1+sqrt2");
  EXPECT_EQ(to_literal(QSqrt2(0) - r2 * QSqrt2(3)), "-3*sqrt2");
  for (const char* s : {"5/7+4/7*sqrt2", "-1+sqrt2", "sqrt2", "-3/2*sqrt2", "2", "0"})
    EXPECT_EQ(to_literal(parse_scalar<QSqrt2>(s)), s) << s;
}

TEST(QSqrt2, ExactSignNearSqrt2) {
  QSqrt2 r2 = QSqrt2::sqrt2();
  // Convergents of sqrt2 alternate around it.
  EXPECT_GT(sgn(QSqrt2(Rational(99, 70)) - r2), 0);
  EXPECT_LT(sgn(QSqrt2(Rational(140, 99)) - r2), 0);
  EXPECT_GT(sgn(QSqrt2(Rational(665857, 470832)) - r2), 0);
  EXPECT_EQ(sgn(r2 * r2 - QSqrt2(2)), 0);
}

TEST(QSqrt2, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> u(-9, 9);
  for (int t = 0; t < 200; ++t) {
    QSqrt2 a = QSqrt2(Rational(u(rng), 1 + std::abs(u(rng)))) + QSqrt2(u(rng)) * QSqrt2::sqrt2();
    QSqrt2 b = QSqrt2(Rational(u(rng), 1 + std::abs(u(rng)))) + QSqrt2(u(rng)) * QSqrt2::sqrt2();
    EXPECT_EQ((a + b) - b, a);
    if (!is_zero(b)) EXPECT_EQ((a * b) / b, a);
    if (std::abs(to_double(a) - to_double(b)) > 1e-9) EXPECT_EQ(a < b, to_double(a) < to_double(b));
  }
}

TEST(Float, ToleranceComparisons) {
  EXPECT_EQ(sgn(Float(1e-12)), 0);
  EXPECT_EQ(sgn(Float(1e-6)), 1);
  EXPECT_TRUE(Float(1.0) == Float(1.0 + 1e-12));
  EXPECT_EQ(to_literal(parse_scalar<Float>(to_literal(Float(0.1)))), to_literal(Float(0.1)));
}

TEST(Sqrt, StaysInField) {
  EXPECT_EQ(exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_EQ(exact_sqrt(QSqrt2(8)), QSqrt2(2) * QSqrt2::sqrt2());
  EXPECT_THROW(exact_sqrt(Rational(2)), Error);
  EXPECT_THROW(exact_sqrt(QSqrt2(3)), Error);
}

template <class T>
class LinearAlgebra : public ::testing::Test {};
using Fields = ::testing::Types<Rational, QSqrt2, Float>;
TYPED_TEST_SUITE(LinearAlgebra, Fields);

TYPED_TEST(LinearAlgebra, SolveAndInverseBySubstitution) {
  using T = TypeParam;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    Matrix<T> a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = testing::random_vector<T>(rng, n);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = row[j];
    }
    auto b = testing::random_vector<T>(rng, n);
    auto x = solve(a, b);
    auto inv = inverse(a);
    ASSERT_EQ(x.has_value(), inv.has_value());
    if (!x) {
      EXPECT_LT(rank(a), n);
      continue;
    }
    auto ax = a * *x;
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(ax[i] == b[i]);
    auto id = a * *inv;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(id(i, j) == T(i == j ? 1 : 0));
  }
}

TYPED_TEST(LinearAlgebra, NullSpaceAnnihilates) {
  using T = TypeParam;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Matrix<T> a(2, 4);
    for (std::size_t i = 0; i < 2; ++i) {
      auto row = testing::random_vector<T>(rng, 4);
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = row[j];
    }
    auto ns = null_space(a);
    EXPECT_EQ(ns.cols() + rank(a), 4U);
    auto z = a * ns;
    for (std::size_t i = 0; i < z.rows(); ++i)
      for (std::size_t j = 0; j < z.cols(); ++j) EXPECT_TRUE(is_zero(z(i, j)));
  }
}

}  // namespace
}  // namespace lipfree
