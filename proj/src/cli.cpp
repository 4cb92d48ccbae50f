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

#include "lipfree/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>

#include "lipfree/ae.hpp"
#include "lipfree/free_space.hpp"
#include "lipfree/io.hpp"
#include "lipfree/polyspace.hpp"
#include "lipfree/projconst.hpp"

namespace lipfree {
namespace {

struct Flags {
  std::string field;  // empty: the file's own field
  double tol = 1e-9;
  std::string format = "table";
  std::uint64_t seed = 1;
  std::optional<std::size_t> budget;
  std::size_t cap = kDefaultBallCap;
};

int exit_code(Errc c) {
  switch (c) {
    case Errc::ParseError: return 2;
    case Errc::FieldMismatch: return 3;
    case Errc::AssertionFailed: return 4;
    default: return 1;
  }
}

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::AssertionFailed, what);
}

SolveOptions solve_options(const Flags& f) {
  SolveOptions so;
  so.tolerance = f.tol;
  return so;
}

FieldKind field_for(const Flags& f, const MetricDocument& doc) {
  return f.field.empty() ? doc.field : parse_field_kind(f.field);
}

// --- table rendering -------------------------------------------------------

bool is_scalar_object(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("exact") && j.contains("decimal");
}

std::string leaf(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (is_scalar_object(j)) return j["exact"].get<std::string>() + "  (" + j["decimal"].get<std::string>() + ")";
  return j.dump();
}

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& v : j)
    if (v.is_structured() && !is_scalar_object(v)) return false;
  return true;
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& r : j)
    if (!is_flat_array(r) || r.empty()) return false;
  return true;
}

void render(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (!v.is_structured() || is_scalar_object(v)) {
        out << pad << k << ": " << leaf(v) << "\n";
      } else if (is_matrix(v)) {
        out << pad << k << ":\n";
        std::size_t width = 0;
        for (const auto& r : v)
          for (const auto& x : r) width = std::max(width, leaf(x).size());
        for (const auto& r : v) {
          out << pad << "  ";
          for (const auto& x : r) {
            std::string s = leaf(x);
            out << std::string(width - s.size(), ' ') << s << "  ";
          }
          out << "\n";
        }
      } else if (is_flat_array(v)) {
        out << pad << k << ":";
        if (v.empty()) out << " (none)";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << leaf(v[i]);
        out << "\n";
      } else {
        out << pad << k << ":\n";
        render(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      out << pad << "-\n";
      render(v, out, indent + 2);
    }
  } else {
    out << pad << leaf(j) << "\n";
  }
}

void emit(const Json& j, const Flags& f, std::ostream& out) {
  if (f.format == "json")
    out << j.dump(2) << "\n";
  else
    render(j, out, 0);
}

// --- subcommands -------------------------------------------------------------

Json cmd_validate(const std::string& path, const Flags& f) {
  auto doc = load_metric_document(path);
  return with_field(field_for(f, doc), [&](auto tag) {
    using T = decltype(tag);
    auto x = metric_from_document<T>(doc);
    return Json{{"valid", true}, {"points", x.size()}, {"field", field_name(ScalarTraits<T>::kind)}, {"labels", x.labels()}};
  });
}

template <Scalar T>
Json info_json(const DistanceMatrix<T>& x, const Flags& f) {
  auto ds = diam_sep(x);
  Json j{{"points", x.size()}, {"field", field_name(ScalarTraits<T>::kind)}, {"labels", x.labels()},
         {"diam", scalar_json(ds.diam)}, {"sep", scalar_json(ds.sep)}, {"sep_diam_upper", scalar_json(sep_diam_upper(x))}};
  if (auto tree = detect_tree(x)) {
    Json edges = Json::array();
    for (const auto& e : tree->edges)
      edges.push_back({{"u", tree->vertices[e.u]}, {"v", tree->vertices[e.v]}, {"weight", scalar_json(e.weight)}});
    j["tree"] = {{"is_tree", true}, {"steiner_points", tree->size() - x.size()}, {"edges", edges}};
  } else {
    j["tree"] = {{"is_tree", false}};
  }
  if (x.size() == 4) {
    auto p = four_point_params(x);
    Json relabel = Json::array();
    for (auto r : p.relabeling) relabel.push_back(x.label(r));
    Json legs = Json::array();
    for (const auto& l : p.legs()) legs.push_back(scalar_json(l));
    j["four_point"] = {{"normal_form_order", relabel}, {"legs", legs}, {"ell", scalar_json(p.ell)}, {"w", scalar_json(p.w)}};
    j["injective_hull_points"] = injective_hull_superspace(x).space.size();
  }
  j["free_space_dim"] = x.size() - 1;
  try {
    auto ball = lipschitz_ball(PointedSpace<T>(x, 0), f.cap);
    j["lipschitz_ball_vertices"] = ball.vertices.size();
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge) throw;
    j["lipschitz_ball_vertices"] = "above cap";
  }
  return j;
}

Json cmd_info(const std::string& path, const Flags& f) {
  auto doc = load_metric_document(path);
  return with_field(field_for(f, doc), [&](auto tag) { return info_json(metric_from_document<decltype(tag)>(doc), f); });
}

template <Scalar T>
Json free_space_json(const DistanceMatrix<T>& x, const std::string& base, const Flags& f) {
  std::size_t b = 0;
  if (!base.empty()) {
    auto i = x.index_of(base);
    if (!i) throw Error(Errc::ParseError, "no point labelled '" + base + "'");
    b = *i;
  }
  PointedSpace<T> px(x, b);
  auto ball = lipschitz_ball(px, f.cap);
  Json coords = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != b) coords.push_back(x.label(i));
  Json verts = Json::array();
  for (const auto& v : ball.vertices) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(to_literal(c));
    verts.push_back(std::move(row));
  }
  Json deltas = Json::object();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != b) deltas[x.label(i)] = scalar_json(free_norm(ball, delta(px, i)));
  return Json{{"basepoint", x.label(b)},
              {"dim", px.dim()},
              {"coordinates", coords},
              {"vertex_count", ball.vertices.size()},
              {"linf_embedding_dim", ball.vertices.size() / 2},
              {"delta_norms", deltas},
              {"vertices", verts}};
}

Json cmd_free_space(const std::string& path, const std::string& base, const Flags& f) {
  auto doc = load_metric_document(path);
  return with_field(field_for(f, doc),
                    [&](auto tag) { return free_space_json(metric_from_document<decltype(tag)>(doc), base, f); });
}

Json cmd_lambda(const std::vector<std::string>& relative, const std::string& absolute, const Flags& f) {
  SolveOptions so = solve_options(f);
  if (!relative.empty()) {
    auto dx = load_metric_document(relative[0]);
    auto dy = load_metric_document(relative[1]);
    return with_field(field_for(f, dx), [&](auto tag) {
      using T = decltype(tag);
      auto x = metric_from_document<T>(dx);
      auto y = metric_from_document<T>(dy);
      auto base = y.index_of(x.label(0));
      if (!base) throw Error(Errc::NotASubset, "basepoint '" + x.label(0) + "' of X is not a point of Y");
      auto r = lambda_lip(PointedSpace<T>(x, 0), PointedSpace<T>(y, *base), so, f.cap);
      Json j{{"mode", "relative"}, {"x", x.labels()}, {"y", y.labels()}};
      j.update(projconst_json(r));
      return j;
    });
  }
  auto dx = load_metric_document(absolute);
  return with_field(field_for(f, dx), [&](auto tag) {
    using T = decltype(tag);
    auto x = metric_from_document<T>(dx);
    auto r = ae_upper_absolute_result(PointedSpace<T>(x, 0), f.cap, so);
    Json j{{"mode", "absolute"}, {"x", x.labels()}, {"linf_embedding_dim", r.projection ? r.projection->rows() : 0}};
    j.update(projconst_json(r));
    return j;
  });
}

template <Scalar T>
Json ae_json(const DistanceMatrix<T>& x, const Flags& f) {
  SolveOptions so = solve_options(f);
  auto rep = ae_report(x, so, f.cap);
  Json search;
  if (f.budget && *f.budget > 0 && x.size() == 4) {
    Matrix<Float> m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = Float(to_double(x(i, j)));
    auto xf = DistanceMatrix<Float>::validate(m, x.labels());
    SearchOptions opt;
    opt.budget = *f.budget;
    opt.seed = f.seed;
    auto s = search_lower_bound(xf, opt, so);
    search = {{"value", scalar_json(Float(s.value))}, {"numeric", true}, {"evaluations", s.evaluations}, {"witness", metric_json(s.witness)}};
    if constexpr (!is_exact_v<T>) {
      rep.add_lower({Float(s.value), s.witness, "search", false});
    } else {
      // Re-verify exactly: X block from the input, new distances from their
      // double values read as exact decimals.
      const std::size_t n = s.witness.size();
      Matrix<T> e(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          e(i, j) = i < 4 && j < 4 ? x(i, j) : parse_scalar<T>(to_literal(s.witness(i, j)));
      try {
        auto w = DistanceMatrix<T>::validate(std::move(e), s.witness.labels());
        auto v = lambda_lip(PointedSpace<T>(x, 0), PointedSpace<T>(w, 0), so, f.cap).value;
        rep.add_lower({v, w, "search (exact re-verification)", false});
        search["exact_recheck"] = scalar_json(v);
      } catch (const Error& err) {
        search["exact_recheck"] = std::string("skipped: ") + err.what();
      }
    }
  }
  Json j = ae_report_json(rep);
  if (!search.is_null()) j["search"] = search;
  return j;
}

Json cmd_ae(const std::string& path, const Flags& f) {
  auto doc = load_metric_document(path);
  return with_field(field_for(f, doc), [&](auto tag) { return ae_json(metric_from_document<decltype(tag)>(doc), f); });
}

// --- reproduction recipes ----------------------------------------------------

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json reproduce_ae3(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  using T = Rational;
  auto x = equilateral<T>(3, T(2));
  auto pod = npod<T>(3, T(1));
  auto r = lambda_lip(PointedSpace<T>(x, 0), PointedSpace<T>(pod.space, 0), solve_options(f));
  check(r.value == T(4) / T(3), "lambda_lip(equilateral-3, 3-pod) = " + to_literal(r.value) + ", expected 4/3");
  return Json{{"recipe", "ae3"}, {"ae3", scalar_json(r.value)}, {"route", "B"}, {"lp_rows", r.diagnostics.lp_rows},
              {"seconds", seconds_since(t0)}};
}

Json reproduce_ae4(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  using T = QSqrt2;
  const T lower = (T(5) + T(4) * T::sqrt2()) / T(7);
  const T upper = (T(3) + T(6) * T::sqrt2()) / T(7);
  auto cert = ae4_certificate<T>();
  check(cert.value == lower, "certificate value " + to_literal(cert.value) + ", expected " + to_literal(lower));
  const T nu1 = nuclear1_l1(cert.a);
  check(nu1 == T(1), "nu_1(DS) = " + to_literal(nu1) + ", expected 1");
  check(cert.a * cert.p == cert.p * cert.a * cert.p, "AP != PAP for the certificate");
  auto x = ae4_rectangle<T>(false), y = ae4_rectangle<T>(true);
  auto lp = lambda_lip(PointedSpace<T>(x, 0), PointedSpace<T>(y, 0), solve_options(f));
  check(!(lp.value < lower), "Route B on (X0, Y0) = " + to_literal(lp.value) + " is below " + to_literal(lower));
  T klb = klb_bound<T>(3, 7);
  check(klb == upper, "klb(3,7) = " + to_literal(klb) + ", expected " + to_literal(upper));
  return Json{{"recipe", "ae4"},
              {"certificate", scalar_json(cert.value)},
              {"certificate_nu1", scalar_json(nu1)},
              {"route_b_x0_y0", scalar_json(lp.value)},
              {"lower", scalar_json(lower)},
              {"upper", scalar_json(klb)},
              {"seconds", seconds_since(t0)}};
}

Json reproduce_bohnenblust(std::size_t n, const Flags& f) {
  if (n < 2) throw Error(Errc::BadDimensions, "bohnenblust needs n >= 2");
  auto t0 = std::chrono::steady_clock::now();
  using T = Rational;
  RouteAOptions opt;
  opt.lp = solve_options(f);
  auto r = lambda_subspace(sum_zero_hyperplane(PolyhedralSpace<T>::l1(n)), opt);
  T expected = T(2) - T(2) / T(static_cast<long>(n));
  check(r.value == expected, "lambda(H, l_1^" + std::to_string(n) + ") = " + to_literal(r.value) + ", expected " + to_literal(expected));
  return Json{{"recipe", "bohnenblust"}, {"n", n}, {"value", scalar_json(r.value)}, {"expected", scalar_json(expected)},
              {"certificate_verified", r.certificate_verified}, {"seconds", seconds_since(t0)}};
}

Json reproduce_extreme_count(std::size_t d) {
  if (d < 1 || d > 6) throw Error(Errc::BadDimensions, "extreme-count supports 1 <= d <= 6");
  auto f = PolyhedralSpace<Rational>::linf(d);
  std::size_t measured = operator_ball_vertices(f, d).size();
  Json j{{"recipe", "extreme-count"}, {"d", d}, {"measured", measured}};
  if (d <= 2) {
    // Independent count: vertex enumeration of the operator ball from its
    // facets, with no use of the characterization.
    auto custom = PolyhedralSpace<Rational>::custom(f.dual_ball_extremes(), f.ball_extremes());
    std::size_t dd = operator_ball_vertices(custom, d).size();
    check(dd == measured, "facet enumeration found " + std::to_string(dd) + " vertices, characterization " + std::to_string(measured));
    j["facet_enumeration"] = dd;
  }
  std::size_t formula = std::size_t{1} << (d + 1);
  for (std::size_t i = 0; i < d; ++i) formula *= d;
  std::size_t closed = 1;
  for (std::size_t i = 0; i < d; ++i) closed *= 2 * d;
  j["closed_form_2d_pow_d"] = closed;
  j["formula_2_pow_d_plus_1_times_d_pow_d"] = formula;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lipfree: projection constants of Lipschitz-free spaces over finite metric spaces"};
  app.require_subcommand(1);
  Flags f;
  std::size_t budget = 0;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--field", f.field, "Scalar field: rational, sqrt2 or f64 (default: the file's)")
        ->check(CLI::IsMember({"rational", "sqrt2", "f64"}));
    c->add_option("--tol", f.tol, "Float tolerance for LP verification and comparisons");
    c->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    c->add_option("--seed", f.seed, "Search seed");
    c->add_option("--budget", budget, "Search budget (ae on 4 points)");
    c->add_option("--cap", f.cap, "Point-count cap for Lipschitz-ball enumeration");
  };

  std::string path, base, absolute;
  std::vector<std::string> relative;
  std::string recipe;
  std::size_t recipe_arg = 0;

  auto* validate = app.add_subcommand("validate", "Check a metric file");
  validate->add_option("file", path)->required();
  auto* info = app.add_subcommand("info", "Summary of a metric space");
  info->add_option("file", path)->required();
  auto* fs = app.add_subcommand("free-space", "Lipschitz-ball vertices and free-space norms");
  fs->add_option("file", path)->required();
  fs->add_option("--basepoint", base, "Basepoint label (default: first point)");
  auto* lambda = app.add_subcommand("lambda", "Relative or absolute projection constant");
  auto* rel = lambda->add_option("--relative", relative, "X.json Y.json")->expected(2);
  auto* abs_opt = lambda->add_option("--absolute", absolute, "X.json");
  rel->excludes(abs_opt);
  auto* ae = app.add_subcommand("ae", "Bounds on ae(X)");
  ae->add_option("file", path)->required();
  auto* rep = app.add_subcommand("reproduce", "Reproduce a known value (ae3, ae4, bohnenblust N, extreme-count D)");
  rep->add_option("recipe", recipe)->required()->check(CLI::IsMember({"ae3", "ae4", "bohnenblust", "extreme-count"}));
  rep->add_option("n", recipe_arg, "Size argument for bohnenblust and extreme-count");
  for (auto* c : {validate, info, fs, lambda, ae, rep}) add_common(c);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 2;
  }
  if (ae->count("--budget") || rep->count("--budget")) f.budget = budget;
  float_tolerance() = f.tol;

  try {
    Json result;
    if (*validate) {
      result = cmd_validate(path, f);
    } else if (*info) {
      result = cmd_info(path, f);
    } else if (*fs) {
      result = cmd_free_space(path, base, f);
    } else if (*lambda) {
      if (relative.empty() && absolute.empty()) throw Error(Errc::ParseError, "lambda needs --relative X Y or --absolute X");
      result = cmd_lambda(relative, absolute, f);
    } else if (*ae) {
      result = cmd_ae(path, f);
    } else {
      if (recipe == "ae3") result = reproduce_ae3(f);
      else if (recipe == "ae4") result = reproduce_ae4(f);
      else {
        if (!rep->count("n")) throw Error(Errc::ParseError, recipe + " needs a size argument");
        result = recipe == "bohnenblust" ? reproduce_bohnenblust(recipe_arg, f) : reproduce_extreme_count(recipe_arg);
      }
    }
    emit(result, f, out);
    return 0;
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << e.what();
    if (!e.where().empty()) {
      msg << " [indices";
      if (e.code() == Errc::TriangleViolation) msg << " (i, j, k)";
      msg << " = (";
      for (std::size_t i = 0; i < e.where().size(); ++i) msg << (i ? ", " : "") << e.where()[i];
      msg << ")]";
    }
    err << "error: " << msg.str() << "\n";
    if (f.format == "json") {
      Json j{{"error", errc_name(e.code())}, {"message", msg.str()}, {"indices", e.where()}};
      out << j.dump(2) << "\n";
    }
    return exit_code(e.code());
  }
}

}  // namespace lipfree
