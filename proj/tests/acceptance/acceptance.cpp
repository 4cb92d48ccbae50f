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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "lipfree/ae.hpp"
#include "oracles.hpp"

using namespace lipfree;

namespace {

using R = Rational;
using S = QSqrt2;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Checks {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome result() const {
    Outcome o = out_;
    if (o.ok) o.detail = notes_;
    return o;
  }

 private:
  Outcome out_;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Rectangle-plus-legs distances in normal form, written out independently of
// the library.
Matrix<R> normal_form_oracle(const std::array<R, 4>& legs, const R& ell, const R& w) {
  auto rect = [&](std::size_t i, std::size_t j) -> R {
    auto a = std::min(i, j), b = std::max(i, j);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return ell;
    if ((a == 1 && b == 2) || (a == 0 && b == 3)) return w;
    return ell + w;
  };
  Matrix<R> m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) m(i, j) = legs[i] + rect(i, j) + legs[j];
  return m;
}

template <Scalar T>
T norm_inf(const Vec<T>& v) {
  T m(0);
  for (const auto& x : v) m = max_of(m, abs(x));
  return m;
}

template <Scalar T>
T norm_1(const Vec<T>& v) {
  T s(0);
  for (const auto& x : v) s += abs(x);
  return s;
}

template <Scalar T>
SubspaceBasis<T> random_subspace(std::mt19937_64& rng, const PolyhedralSpace<T>& f, std::size_t k) {
  std::uniform_int_distribution<long> v(-3, 3);
  for (;;) {
    Matrix<T> u(f.dim, k);
    for (std::size_t i = 0; i < f.dim; ++i)
      for (std::size_t j = 0; j < k; ++j) u(i, j) = T(v(rng));
    if (rank(u) == k) return SubspaceBasis<T>(f, u);
  }
}

Outcome c1() {
  Checks c;
  auto t0 = std::chrono::steady_clock::now();
  auto x = equilateral<R>(3, R(2));
  auto pod = npod<R>(3, R(1));
  auto v = lambda_lip(PointedSpace<R>(x, 0), PointedSpace<R>(pod.space, 0)).value;
  double t = seconds_since(t0);
  c.expect(v == R(4, 3), "lambda_lip = " + to_literal(v));
  c.expect(t < 1.0, "runtime " + fmt(t) + " s");
  c.note("value " + to_literal(v) + " in " + fmt(t) + " s");
  return c.result();
}

Outcome c2() {
  Checks c;
  for (std::size_t n = 2; n <= 5; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = lambda_subspace(sum_zero_hyperplane(PolyhedralSpace<R>::l1(n)));
    double t = seconds_since(t0);
    R expect = R(2) - R(2) / R(static_cast<long>(n));
    c.expect(r.value == expect, "n=" + std::to_string(n) + ": " + to_literal(r.value));
    c.expect(r.certificate_verified, "n=" + std::to_string(n) + ": certificate not verified");
    c.expect(t < 5.0, "n=" + std::to_string(n) + ": runtime " + fmt(t) + " s");
    c.note("n=" + std::to_string(n) + " " + to_literal(r.value) + " (" + fmt(t) + " s)");
  }
  return c.result();
}

Outcome c3() {
  Checks c;
  for (std::size_t n = 3; n <= 5; ++n) {
    auto pod = npod<R>(n, R(1));
    PointedSpace<R> y(pod.space, 0);
    PointedSpace<R> x(pod.space.restrict_to(pod.leaves), 0);
    R b = lambda_lip(x, y).value;
    WeightedTree<R> t;
    t.vertices = pod.space.labels();
    for (auto l : pod.leaves) t.edges.push_back({l, pod.center, R(1)});
    Matrix<R> img = tree_isometry(t) * inclusion_matrix(x, y);
    R a = lambda_subspace(SubspaceBasis<R>(PolyhedralSpace<R>::l1(n), img)).value;
    c.expect(a == b, "n=" + std::to_string(n) + ": Route A " + to_literal(a) + " vs Route B " + to_literal(b));
    c.note("n=" + std::to_string(n) + " " + to_literal(b));
  }
  return c.result();
}

Outcome c4() {
  Checks c;
  auto cert = ae4_certificate<S>();
  S r2 = S::sqrt2();
  S target = (S(5) + S(4) * r2) / S(7);
  c.expect(cert.value == target, "value " + to_literal(cert.value));
  c.expect(nuclear1_l1(cert.a) == S(1), "nu_1(DS) = " + to_literal(nuclear1_l1(cert.a)));
  c.expect(cert.a * cert.p == cert.p * cert.a * cert.p, "AP != PAP");
  auto col = [&](std::size_t j) { return cert.m.column(j); };
  auto lin = [](std::initializer_list<std::pair<S, Vec<S>>> terms) {
    Vec<S> out(5, S(0));
    for (const auto& [s, v] : terms)
      for (std::size_t i = 0; i < 5; ++i) out[i] += s * v[i];
    return out;
  };
  Vec<S> u1 = lin({{S(1), col(1)}, {S(1), col(2)}, {S(-1), col(0)}});
  Vec<S> u2 = lin({{S(1), col(2)}, {S(-1), col(1)}});
  Vec<S> u3 = col(0);
  S l1 = (r2 + S(3)) / S(7), l23 = (S(3) * r2 + S(2)) / S(14);
  c.expect(cert.a * u1 == lin({{l1, u1}}), "A u1 != lambda1 u1");
  c.expect(cert.a * u2 == lin({{l23, u2}}), "A u2 != lambda2 u2");
  c.expect(cert.a * u3 == lin({{l23, u3}}), "A u3 != lambda3 u3");
  c.note("value " + to_literal(cert.value) + ", eigenvalues " + to_literal(l1) + ", " + to_literal(l23) + " (twice)");
  return c.result();
}

Outcome c5() {
  Checks c;
  auto t0 = std::chrono::steady_clock::now();
  auto x = ae4_rectangle<Float>(), y = ae4_rectangle<Float>(true);
  double v = to_double(lambda_lip(PointedSpace<Float>(x, 0), PointedSpace<Float>(y, 0)).value);
  double t = seconds_since(t0);
  double target = (5 + 4 * std::sqrt(2.0)) / 7;
  c.expect(v >= target - 1e-9, "v = " + fmt(v));
  c.expect(t < 60, "runtime " + fmt(t) + " s");
  c.note("v = " + fmt(v) + ", v - (5+4sqrt2)/7 = " + fmt(v - target) + " (" + fmt(t) + " s)");
  return c.result();
}

Outcome c6() {
  Checks c;
  S k = klb_bound<S>(3, 7);
  c.expect(k == (S(3) + S(6) * S::sqrt2()) / S(7), "klb(3,7) = " + to_literal(k));
  double kf = to_double(klb_bound<Float>(3, 7));
  c.expect(std::fabs(kf - (3 + 6 * std::sqrt(2.0)) / 7) <= 1e-12, "float klb(3,7) = " + fmt(kf));
  c.note(to_literal(k) + " = " + fmt(kf));
  return c.result();
}

Outcome c7() {
  Checks c;
  const std::size_t d = 2;
  auto f = PolyhedralSpace<R>::linf(d);
  auto chars = operator_ball_vertices(f);
  // Brute force over the facets f.(A x) <= 1, f and x extreme.
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
  auto brute = testing::brute_force_vertices(a, Vec<R>(a.rows(), R(1)));
  std::vector<Vec<R>> flat;
  for (const auto& m : chars) flat.push_back(m.data());
  sort_unique(flat);
  c.expect(flat == brute, "characterization and brute force differ");
  c.expect(brute.size() == 16, "brute force found " + std::to_string(brute.size()));
  std::size_t formula = std::size_t{1} << (d + 1);
  for (std::size_t i = 0; i < d; ++i) formula *= d;
  c.note("measured " + std::to_string(brute.size()) + ", formula 2^(d+1) d^d = " + std::to_string(formula));
  return c.result();
}

Outcome c8() {
  Checks c;
  std::mt19937_64 rng(2024);
  double worst = 0;
  std::string worst_at;
  for (int t = 0; t < 50; ++t) {
    std::size_t d = 2 + static_cast<std::size_t>(t) % 3;
    std::size_t k = 1 + static_cast<std::size_t>(t / 3) % (d - 1);
    if (t % 7 == 0) k = d;
    auto e = random_subspace(rng, PolyhedralSpace<R>::linf(d), k);
    R v = lambda_subspace(e).value;
    if (to_double(v) > worst) {
      worst = to_double(v);
      worst_at = "dim " + std::to_string(k) + " in l_inf^" + std::to_string(d);
    }
    c.expect(!(v < R(1)), "value below 1 at instance " + std::to_string(t));
    c.expect(to_double(v) <= std::sqrt(static_cast<double>(k)) + 1e-9,
             "instance " + std::to_string(t) + ": " + to_literal(v) + " > sqrt(" + std::to_string(k) + ")");
  }
  c.note("50 subspaces, largest value " + fmt(worst) + " (" + worst_at + ")");
  return c.result();
}

Outcome c9() {
  Checks c;
  std::mt19937_64 rng(99);
  std::size_t checked = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(t) % 4;
    auto x = t % 2 ? testing::random_metric<R>(rng, n) : testing::random_path_metric<R>(rng, n);
    PointedSpace<R> px(x, static_cast<std::size_t>(t) % n);
    auto ball = lipschitz_ball(px);
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(free_norm(ball, delta(px, i)) == x(i, px.basepoint), "delta norm");
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) c.expect(free_norm(ball, molecule(px, i, j)) == R(1), "molecule norm");
    }
    ++checked;
  }
  // embed_linf on 100 random vectors over random 4- and 5-point spaces.
  for (int t = 0; t < 100; ++t) {
    auto x = testing::random_metric<R>(rng, 4 + static_cast<std::size_t>(t / 50));
    PointedSpace<R> px(x, 0);
    auto ball = lipschitz_ball(px);
    auto m = embed_linf(ball);
    auto mu = testing::random_vector<R>(rng, px.dim());
    c.expect(norm_inf(m * mu) == free_norm(ball, mu), "embed_linf not isometric");
  }
  for (int t = 0; t < 100; ++t) {
    auto tree = testing::random_tree<R>(rng, 3 + static_cast<std::size_t>(t) % 3);
    tree.basepoint = static_cast<std::size_t>(t) % tree.size();
    auto ps = tree_space(tree);
    auto ball = lipschitz_ball(ps);
    auto iso = tree_isometry(tree);
    auto mu = testing::random_vector<R>(rng, ps.dim());
    c.expect(norm_1(iso * mu) == free_norm(ball, mu), "tree_isometry not isometric");
  }
  c.note(std::to_string(checked) + " metrics, 100 vectors each for embed_linf and tree_isometry");
  return c.result();
}

Outcome c10() {
  Checks c;
  std::mt19937_64 rng(7);
  auto t0 = std::chrono::steady_clock::now();
  for (int t = 0; t < 100; ++t) {
    auto x = t % 2 ? testing::random_metric<R>(rng, 4) : testing::random_path_metric<R>(rng, 4);
    auto p = four_point_params(x);
    Matrix<R> nf = normal_form_oracle(p.legs(), p.ell, p.w);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        c.expect(nf(i, j) == x(p.relabeling[i], p.relabeling[j]), "normal form mismatch at instance " + std::to_string(t));
    auto h = injective_hull_superspace(x);
    c.expect(h.space.size() <= 8, "hull has more than 8 points");
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) c.expect(h.space(h.x_indices[i], h.x_indices[j]) == x(i, j), "hull not isometric");
    auto rep = ae4_pipeline(x);
    c.expect(!(rep.best_upper < rep.best_lower), "sandwich violated at instance " + std::to_string(t));
  }
  c.note("100 metrics (" + fmt(seconds_since(t0)) + " s)");
  return c.result();
}

Outcome c11() {
  Checks c;
  std::mt19937_64 rng(11);
  std::size_t count = 0;
  auto compare = [&](const SubspaceBasis<R>& e, const std::string& name) {
    RouteAOptions en, cg;
    en.mode = VertexMode::Enumerate;
    cg.mode = VertexMode::ColumnGeneration;
    R a = lambda_subspace(e, en).value, b = lambda_subspace(e, cg).value;
    c.expect(a == b, name + ": enumeration " + to_literal(a) + " vs column generation " + to_literal(b));
    ++count;
  };
  for (std::size_t d = 2; d <= 4; ++d)
    for (auto f : {PolyhedralSpace<R>::linf(d), PolyhedralSpace<R>::l1(d)}) {
      compare(sum_zero_hyperplane(f), "hyperplane d=" + std::to_string(d));
      for (std::size_t k = 1; k < d; ++k)
        for (int rep = 0; rep < 2; ++rep) compare(random_subspace(rng, f, k), "random d=" + std::to_string(d));
    }
  c.note(std::to_string(count) + " instances");
  return c.result();
}

Outcome c12() {
  Checks c;
  std::mt19937_64 rng(12);
  std::size_t bounds = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 3 + static_cast<std::size_t>(t) % 2;
    auto big = t % 2 ? testing::random_metric<R>(rng, n + 2) : testing::random_path_metric<R>(rng, n + 2);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    auto x = big.restrict_to(idx);
    R cap = sep_diam_upper(x);
    PointedSpace<R> px(x, 0);
    R v = lambda_lip(px, PointedSpace<R>(big, 0)).value;
    c.expect(!(cap < v), "lambda_lip " + to_literal(v) + " exceeds " + to_literal(cap));
    ++bounds;
    auto rep = ae_report(x);
    for (const auto& lb : rep.lower_bounds) {
      c.expect(!(cap < lb.value), "report bound " + to_literal(lb.value) + " exceeds " + to_literal(cap));
      ++bounds;
    }
  }
  c.note(std::to_string(bounds) + " lower bounds checked");
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ae(3) = 4/3 by Route B in rational mode", c1},
      {"Bohnenblust hyperplanes of l_1^n, n = 2..5", c2},
      {"n-pod Route B equals Route A on the l_1 image", c3},
      {"ae(4) certificate exact in Q(sqrt2)", c4},
      {"ae(4) lower bound LP on (X0, Y0) in float mode", c5},
      {"klb(3,7) = (3+6sqrt2)/7", c6},
      {"operator-ball vertices of L(l_inf^2) by brute force", c7},
      {"Kadets-Snobar bound on random subspaces", c8},
      {"free-space isometries", c9},
      {"four-point normal form and injective hull", c10},
      {"column generation equals enumeration for d <= 4", c11},
      {"lower bounds below the sep/diam bound", c12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double t = seconds_since(t0);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " [" << fmt(t)
              << " s]";
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << std::endl;
    if (!o.ok) ++failed;
  }
  return failed ? 1 : 0;
}
