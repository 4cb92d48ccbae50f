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

// Python module lipfree._core. Results come back as plain dicts and lists
// with exact literals, in the same shapes as the CLI's JSON output.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "lipfree/ae.hpp"
#include "lipfree/cli.hpp"
#include "lipfree/io.hpp"

namespace py = pybind11;
using namespace lipfree;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

using AnyMetric = std::variant<DistanceMatrix<Rational>, DistanceMatrix<QSqrt2>, DistanceMatrix<Float>>;

AnyMetric typed(const MetricDocument& doc) {
  return with_field(doc.field, [&](auto tag) -> AnyMetric { return metric_from_document<decltype(tag)>(doc); });
}

class Metric {
 public:
  explicit Metric(AnyMetric m) : m_(std::move(m)) {}

  static Metric from_rows(const py::object& distances, std::optional<std::vector<std::string>> labels,
                          const std::string& field) {
    MetricDocument doc;
    doc.field = parse_field_kind(field);
    doc.distances = from_py(distances);
    if (labels) doc.labels = *labels;
    return Metric(typed(doc));
  }
  static Metric from_json(const std::string& text) { return Metric(typed(parse_metric_document(text))); }
  static Metric load(const std::string& path) { return Metric(typed(load_metric_document(path))); }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), m_);
  }

  std::size_t size() const {
    return visit([](const auto& x) { return x.size(); });
  }
  std::vector<std::string> labels() const {
    return visit([](const auto& x) { return x.labels(); });
  }
  std::string field() const {
    return visit([](const auto& x) {
      using T = std::decay_t<decltype(x(0, 0))>;
      return std::string(field_name(ScalarTraits<T>::kind));
    });
  }
  py::object to_dict() const {
    return visit([](const auto& x) { return to_py(metric_json(x)); });
  }
  std::string to_json() const {
    return visit([](const auto& x) { return metric_json(x).dump(); });
  }

  py::object diam_sep() const {
    return visit([](const auto& x) {
      auto ds = lipfree::diam_sep(x);
      return to_py(Json{{"diam", scalar_json(ds.diam)}, {"sep", scalar_json(ds.sep)}});
    });
  }

  py::object four_point_params() const {
    return visit([](const auto& x) {
      auto p = lipfree::four_point_params(x);
      Json legs = Json::array(), order = Json::array();
      for (const auto& l : p.legs()) legs.push_back(scalar_json(l));
      for (auto r : p.relabeling) order.push_back(x.label(r));
      return to_py(Json{{"normal_form_order", order}, {"legs", legs}, {"ell", scalar_json(p.ell)}, {"w", scalar_json(p.w)}});
    });
  }

  py::object ball_vertices(std::size_t basepoint) const {
    return visit([&](const auto& x) {
      auto ball = lipschitz_ball(PointedSpace(x, basepoint));
      Json out = Json::array();
      for (const auto& v : ball.vertices) {
        Json row = Json::array();
        for (const auto& c : v) row.push_back(to_literal(c));
        out.push_back(std::move(row));
      }
      return to_py(out);
    });
  }

  py::object free_norm(const py::object& coeffs, std::size_t basepoint) const {
    return visit([&](const auto& x) {
      using T = std::decay_t<decltype(x(0, 0))>;
      PointedSpace<T> px(x, basepoint);
      Json c = from_py(coeffs);
      if (!c.is_array() || c.size() != px.dim())
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(px.dim()) + " coefficients");
      FreeVector<T> mu;
      for (const auto& v : c) mu.push_back(scalar_from_json<T>(v));
      return to_py(scalar_json(lipfree::free_norm(lipschitz_ball(px), mu)));
    });
  }

  py::object lambda_lip(const Metric& y) const {
    return std::visit(
        [](const auto& x, const auto& yy) -> py::object {
          using T = std::decay_t<decltype(x(0, 0))>;
          using U = std::decay_t<decltype(yy(0, 0))>;
          if constexpr (!std::is_same_v<T, U>) {
            throw Error(Errc::FieldMismatch, "X and Y use different fields");
          } else {
            auto base = yy.index_of(x.label(0));
            if (!base) throw Error(Errc::NotASubset, "basepoint '" + x.label(0) + "' of X is not a point of Y");
            return to_py(projconst_json(lipfree::lambda_lip(PointedSpace<T>(x, 0), PointedSpace<T>(yy, *base))));
          }
        },
        m_, y.m_);
  }

  py::object ae_upper_absolute() const {
    return visit([](const auto& x) { return to_py(projconst_json(ae_upper_absolute_result(PointedSpace(x, 0)))); });
  }

  py::object ae_report() const {
    return visit([](const auto& x) { return to_py(ae_report_json(lipfree::ae_report(x))); });
  }

 private:
  AnyMetric m_;
};

py::object bohnenblust(std::size_t n, const std::string& space) {
  if (space != "l1" && space != "linf") throw Error(Errc::ParseError, "space must be 'l1' or 'linf'");
  if (n < 2) throw Error(Errc::BadDimensions, "bohnenblust needs n >= 2");
  auto f = space == "l1" ? PolyhedralSpace<Rational>::l1(n) : PolyhedralSpace<Rational>::linf(n);
  return to_py(projconst_json(lambda_subspace(sum_zero_hyperplane(f))));
}

py::object ae4_certificate_dict() {
  auto c = ae4_certificate<QSqrt2>();
  return to_py(Json{{"value", scalar_json(c.value)},
                    {"nu1", scalar_json(nuclear1_l1(c.a))},
                    {"invariant", c.a * c.p == c.p * c.a * c.p},
                    {"a", matrix_json(c.a)},
                    {"p", matrix_json(c.p)}});
}

py::object klb(std::size_t n, std::size_t d, const std::string& field) {
  return with_field(parse_field_kind(field), [&](auto tag) { return to_py(scalar_json(klb_bound<decltype(tag)>(n, d))); });
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projection constants of Lipschitz-free spaces over finite metric spaces";

  // Instances carry .code (the error name) and .where (witness indices).
  static py::handle error = py::exception<Error>(m, "LipfreeError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error)(e.what());
      inst.attr("code") = std::string(errc_name(e.code()));
      inst.attr("where") = e.where();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<Metric>(m, "Metric")
      .def(py::init(&Metric::from_rows), py::arg("distances"), py::arg("labels") = std::nullopt,
           py::arg("field") = "rational")
      .def_static("from_json", &Metric::from_json)
      .def_static("load", &Metric::load)
      .def("__len__", &Metric::size)
      .def_property_readonly("labels", &Metric::labels)
      .def_property_readonly("field", &Metric::field)
      .def("to_dict", &Metric::to_dict)
      .def("to_json", &Metric::to_json)
      .def("diam_sep", &Metric::diam_sep)
      .def("four_point_params", &Metric::four_point_params)
      .def("ball_vertices", &Metric::ball_vertices, py::arg("basepoint") = 0)
      .def("free_norm", &Metric::free_norm, py::arg("coefficients"), py::arg("basepoint") = 0)
      .def("lambda_lip", &Metric::lambda_lip, py::arg("superspace"))
      .def("ae_upper_absolute", &Metric::ae_upper_absolute)
      .def("ae_report", &Metric::ae_report);

  m.def("equilateral", [](std::size_t n, const std::string& side) {
    return Metric(equilateral<Rational>(n, parse_scalar<Rational>(side)));
  }, py::arg("n"), py::arg("side") = "1");
  m.def("npod", [](std::size_t n, const std::string& leg) { return Metric(npod<Rational>(n, parse_scalar<Rational>(leg)).space); },
        py::arg("n"), py::arg("leg") = "1");
  m.def("rectangle_x0", [](bool with_y) { return Metric(ae4_rectangle<QSqrt2>(with_y)); }, py::arg("with_y") = false);
  m.def("bohnenblust", &bohnenblust, py::arg("n"), py::arg("space") = "l1");
  m.def("ae4_certificate", &ae4_certificate_dict);
  m.def("klb_bound", &klb, py::arg("n"), py::arg("d"), py::arg("field") = "sqrt2");
  m.def("cli", &cli, py::arg("args"));
}
