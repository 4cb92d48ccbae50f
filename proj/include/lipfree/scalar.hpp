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

// Ordered scalar fields used by every algorithm in the library.
//
//   Rational  exact rationals (GMP).
//   QSqrt2    exact elements a + b*sqrt2 with a, b rational.
//   Float     IEEE double with one global comparison tolerance.
//
// All three expose the same value interface: field arithmetic, total order
// through operator<=> style comparisons, and the free functions sgn(), abs(),
// to_double(), to_literal(). Generic code never inspects a raw double.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "lipfree/error.hpp"

namespace lipfree {

enum class FieldKind { Rational, Sqrt2, F64 };

constexpr std::string_view field_name(FieldKind k) {
  switch (k) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Sqrt2: return "sqrt2";
    case FieldKind::F64: return "f64";
  }
  return "?";
}

inline FieldKind parse_field_kind(std::string_view s) {
  if (s == "rational") return FieldKind::Rational;
  if (s == "sqrt2") return FieldKind::Sqrt2;
  if (s == "f64") return FieldKind::F64;
  throw Error(Errc::ParseError, "unknown field '" + std::string(s) + "'");
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(c);
  return out;
}

// Parses "p", "p/q", "-p/q" or a decimal "1.25" / "-3e-2" into an exact
// rational. Throws ParseError on anything else.
inline mpq_class parse_rational(std::string_view raw) {
  std::string s = trim(raw);
  if (s.empty()) throw Error(Errc::ParseError, "empty scalar literal");
  if (s[0] == '+' && s.size() > 1 && s[1] != '-' && s[1] != '+') s = s.substr(1);
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    auto e = s.find_first_of("eE");
    std::string mant = s.substr(0, e);
    long exp10 = 0;
    if (e != std::string::npos) exp10 = std::stol(s.substr(e + 1));
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
      std::string frac = mant.substr(dot + 1);
      mant = mant.substr(0, dot) + frac;
      exp10 -= static_cast<long>(frac.size());
    }
    if (mant == "-" || mant == "+" || mant.empty()) mant += "0";
    mpq_class q{mpz_class(mant, 10)};
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
      q /= mpq_class(p10);
    else
      q *= mpq_class(p10);
    q.canonicalize();
    return q;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad rational literal '" + s + "'");
  }
}

inline std::string rational_literal(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Splits "a+b*sqrt2" style literals into (rational part, sqrt2 coefficient).
inline std::pair<mpq_class, mpq_class> parse_sqrt2_parts(std::string_view raw) {
  std::string s = trim(raw);
  if (s.empty()) throw Error(Errc::ParseError, "empty scalar literal");
  mpq_class a = 0, b = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    bool cut = i == s.size();
    if (!cut && (s[i] == '+' || s[i] == '-')) {
      char prev = s[i - 1];
      cut = prev != '/' && prev != '*' && prev != 'e' && prev != 'E';
    }
    if (!cut) continue;
    std::string term = s.substr(start, i - start);
    start = i;
    const std::string tag = "sqrt2";
    if (term.size() >= tag.size() && term.compare(term.size() - tag.size(), tag.size(), tag) == 0) {
      std::string coef = term.substr(0, term.size() - tag.size());
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      if (coef.empty() || coef == "+")
        b += 1;
      else if (coef == "-")
        b -= 1;
      else
        b += parse_rational(coef);
    } else {
      a += parse_rational(term);
    }
  }
  return {a, b};
}

inline bool has_sqrt2(std::string_view s) { return s.find("sqrt2") != std::string_view::npos; }

inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rational

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT: implicit from integers is intended
  Rational(long n, long d) : q_(n, d) { q_.canonicalize(); }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (::sgn(o.q_) == 0) throw Error(Errc::NumericFailure, "division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

inline int sgn(const Rational& x) { return ::sgn(x.raw()); }
inline Rational abs(const Rational& x) { return sgn(x) < 0 ? -x : x; }
inline double to_double(const Rational& x) { return x.raw().get_d(); }
inline std::string to_literal(const Rational& x) { return detail::rational_literal(x.raw()); }

// ---------------------------------------------------------------------------
// QSqrt2: a + b*sqrt(2)

class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long n) : a_(n), b_(0) {}  // NOLINT
  QSqrt2(long n, long d) : a_(n, d), b_(0) { a_.canonicalize(); }
  QSqrt2(const Rational& a) : a_(a.raw()), b_(0) {}  // NOLINT
  QSqrt2(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }
  static QSqrt2 sqrt2() { return QSqrt2(mpq_class(0), mpq_class(1)); }

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& sqrt2_part() const { return b_; }

  QSqrt2& operator+=(const QSqrt2& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QSqrt2& operator-=(const QSqrt2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QSqrt2& operator*=(const QSqrt2& o) {
    if (::sgn(o.b_) == 0) {
      a_ *= o.a_;
      if (::sgn(b_) != 0) b_ *= o.a_;
      return *this;
    }
    if (::sgn(b_) == 0) {
      b_ = a_ * o.b_;
      a_ *= o.a_;
      return *this;
    }
    mpq_class na = a_ * o.a_ + 2 * b_ * o.b_;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  QSqrt2& operator/=(const QSqrt2& o) {
    if (::sgn(o.b_) == 0) {
      if (::sgn(o.a_) == 0) throw Error(Errc::NumericFailure, "division by zero");
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    // (a + b r) / (c + e r) = (a + b r)(c - e r) / (c^2 - 2 e^2)
    mpq_class norm = o.a_ * o.a_ - 2 * o.b_ * o.b_;
    QSqrt2 conj(o.a_, mpq_class(-o.b_));
    *this *= conj;
    a_ /= norm;
    b_ /= norm;
    return *this;
  }
  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { return a /= b; }
  friend QSqrt2 operator-(const QSqrt2& x) { return QSqrt2(mpq_class(-x.a_), mpq_class(-x.b_)); }

  // Exact sign of a + b*sqrt2: compare a^2 against 2 b^2 when signs differ.
  int sign() const {
    int sa = ::sgn(a_), sb = ::sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    int c = cmp(a_ * a_, 2 * b_ * b_);
    return c > 0 ? sa : c < 0 ? sb : 0;
  }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return cmp(x.a_, y.a_) == 0 && cmp(x.b_, y.b_) == 0;
  }
  friend std::strong_ordering operator<=>(const QSqrt2& x, const QSqrt2& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class a_{0};
  mpq_class b_{0};
};

inline int sgn(const QSqrt2& x) { return x.sign(); }
inline QSqrt2 abs(const QSqrt2& x) { return x.sign() < 0 ? -x : x; }
inline double to_double(const QSqrt2& x) {
  return x.rational_part().get_d() + x.sqrt2_part().get_d() * std::sqrt(2.0);
}
inline std::string to_literal(const QSqrt2& x) {
  const auto& a = x.rational_part();
  const auto& b = x.sqrt2_part();
  if (::sgn(b) == 0) return detail::rational_literal(a);
  std::string bs;
  if (b == 1)
    bs = "sqrt2";
  else if (b == -1)
    bs = "-sqrt2";
  else
    bs = detail::rational_literal(b) + "*sqrt2";
  if (::sgn(a) == 0) return bs;
  std::string as = detail::rational_literal(a);
  return bs[0] == '-' ? as + bs : as + "+" + bs;
}

// ---------------------------------------------------------------------------
// Float

/// Global comparison tolerance for the Float field; every equality and sign
/// test on Float values goes through it.
inline double& float_tolerance() {
  static double eps = 1e-9;
  return eps;
}

class Float {
 public:
  Float() = default;
  Float(double v) : v_(v) {}  // NOLINT
  Float(long n, long d) : v_(static_cast<double>(n) / static_cast<double>(d)) {}
  Float(int n) : v_(n) {}  // NOLINT
  Float(long n) : v_(static_cast<double>(n)) {}  // NOLINT

  double value() const { return v_; }

  Float& operator+=(const Float& o) { v_ += o.v_; return *this; }
  Float& operator-=(const Float& o) { v_ -= o.v_; return *this; }
  Float& operator*=(const Float& o) { v_ *= o.v_; return *this; }
  Float& operator/=(const Float& o) { v_ /= o.v_; return *this; }
  friend Float operator+(Float a, const Float& b) { return a += b; }
  friend Float operator-(Float a, const Float& b) { return a -= b; }
  friend Float operator*(Float a, const Float& b) { return a *= b; }
  friend Float operator/(Float a, const Float& b) { return a /= b; }
  friend Float operator-(const Float& a) { return Float(-a.v_); }

  int sign() const {
    double eps = float_tolerance();
    return v_ > eps ? 1 : v_ < -eps ? -1 : 0;
  }
  friend bool operator==(const Float& a, const Float& b) { return (a - b).sign() == 0; }
  friend std::weak_ordering operator<=>(const Float& a, const Float& b) {
    int s = (a - b).sign();
    return s < 0 ? std::weak_ordering::less : s > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent;
  }

 private:
  double v_ = 0.0;
};

inline int sgn(const Float& x) { return x.sign(); }
inline Float abs(const Float& x) { return Float(std::fabs(x.value())); }
inline double to_double(const Float& x) { return x.value(); }
inline std::string to_literal(const Float& x) {
  std::ostringstream os;
  os << std::setprecision(17) << x.value();
  return os.str();
}

// ---------------------------------------------------------------------------
// Traits

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr FieldKind kind = FieldKind::Rational;
  static Rational parse(std::string_view s) {
    if (detail::has_sqrt2(s))
      throw Error(Errc::FieldMismatch, "literal '" + std::string(s) + "' needs the sqrt2 field");
    return Rational(detail::parse_rational(s));
  }
  static std::optional<Rational> sqrt(const Rational& x) {
    auto r = detail::rational_sqrt(x.raw());
    if (!r) return std::nullopt;
    return Rational(*r);
  }
  static std::optional<Rational> sqrt2() { return std::nullopt; }
};

template <>
struct ScalarTraits<QSqrt2> {
  static constexpr bool exact = true;
  static constexpr FieldKind kind = FieldKind::Sqrt2;
  static QSqrt2 parse(std::string_view s) {
    auto [a, b] = detail::parse_sqrt2_parts(s);
    return QSqrt2(a, b);
  }
  // Square roots that stay inside Q(sqrt2): q and 2 q^2 multiples only.
  static std::optional<QSqrt2> sqrt(const QSqrt2& x) {
    if (::sgn(x.sqrt2_part()) != 0) return std::nullopt;
    const mpq_class& q = x.rational_part();
    if (auto r = detail::rational_sqrt(q)) return QSqrt2(*r, mpq_class(0));
    mpq_class half = q / 2;
    if (auto r = detail::rational_sqrt(half)) return QSqrt2(mpq_class(0), *r);
    return std::nullopt;
  }
  static std::optional<QSqrt2> sqrt2() { return QSqrt2::sqrt2(); }
};

template <>
struct ScalarTraits<Float> {
  static constexpr bool exact = false;
  static constexpr FieldKind kind = FieldKind::F64;
  static Float parse(std::string_view s) {
    auto [a, b] = detail::parse_sqrt2_parts(s);
    return Float(a.get_d() + b.get_d() * std::sqrt(2.0));
  }
  static std::optional<Float> sqrt(const Float& x) {
    if (x.sign() < 0) return std::nullopt;
    return Float(std::sqrt(std::fmax(0.0, x.value())));
  }
  static std::optional<Float> sqrt2() { return Float(std::sqrt(2.0)); }
};

template <class T>
concept Scalar = requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { sgn(a) } -> std::convertible_to<int>;
  { to_double(a) } -> std::convertible_to<double>;
  { to_literal(a) } -> std::convertible_to<std::string>;
  ScalarTraits<T>::exact;
};

template <Scalar T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <Scalar T>
T parse_scalar(std::string_view s) {
  return ScalarTraits<T>::parse(s);
}

/// sqrt(2) in the field, or FieldUnsupported when the field cannot hold it.
template <Scalar T>
T sqrt2_value() {
  auto r = ScalarTraits<T>::sqrt2();
  if (!r) throw Error(Errc::FieldUnsupported, "sqrt2 is not representable in the rational field");
  return *r;
}

template <Scalar T>
T exact_sqrt(const T& x) {
  auto r = ScalarTraits<T>::sqrt(x);
  if (!r)
    throw Error(Errc::FieldUnsupported,
                "sqrt(" + to_literal(x) + ") is not representable in the " +
                    std::string(field_name(ScalarTraits<T>::kind)) + " field");
  return *r;
}

/// Decimal rendering with 12 significant digits.
template <Scalar T>
std::string to_decimal(const T& x) {
  std::ostringstream os;
  os << std::setprecision(12) << to_double(x);
  return os.str();
}

template <Scalar T>
bool is_zero(const T& x) {
  return sgn(x) == 0;
}

template <Scalar T>
const T& max_of(const T& a, const T& b) {
  return a < b ? b : a;
}

template <Scalar T>
const T& min_of(const T& a, const T& b) {
  return b < a ? b : a;
}

}  // namespace lipfree
