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

// JSON documents for distance matrices and computation reports.
//
//   { "labels": ["a", "b"], "field": "rational", "distances": [["0", "1/2"], ["1/2", "0"]] }
//
// Exact fields take string literals only; f64 also accepts JSON numbers.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lipfree/ae.hpp"
#include "lipfree/error.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/projconst.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

using Json = nlohmann::ordered_json;

/// Parsed but not yet typed metric document.
struct MetricDocument {
  FieldKind field = FieldKind::Rational;
  std::vector<std::string> labels;
  Json distances;
};

MetricDocument parse_metric_document(const std::string& text);
MetricDocument load_metric_document(const std::string& path);
std::string read_text_file(const std::string& path);

template <Scalar T>
T scalar_from_json(const Json& v) {
  if (v.is_string()) return parse_scalar<T>(v.get<std::string>());
  if (v.is_number()) {
    if constexpr (is_exact_v<T>) {
      throw Error(Errc::FieldMismatch, "JSON number " + v.dump() + " in an exact field; write it as a string literal");
    } else {
      return T(v.get<double>());
    }
  }
  throw Error(Errc::ParseError, "scalar must be a string literal or number, got " + v.dump());
}

/// Types the document in field T (which must match the declared field) and
/// validates it.
template <Scalar T>
DistanceMatrix<T> metric_from_document(const MetricDocument& doc) {
  if (doc.field != ScalarTraits<T>::kind)
    throw Error(Errc::FieldMismatch, "document field is " + std::string(field_name(doc.field)) + ", requested " +
                                         std::string(field_name(ScalarTraits<T>::kind)));
  const auto& rows = doc.distances;
  if (!rows.is_array()) throw Error(Errc::ParseError, "distances must be an array of rows");
  const std::size_t n = rows.size();
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw Error(Errc::NotSquare, "distance row " + std::to_string(i) + " has the wrong length");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = scalar_from_json<T>(rows[i][j]);
  }
  return DistanceMatrix<T>::validate(std::move(m), doc.labels);
}

template <Scalar T>
Json scalar_json(const T& x) {
  return Json{{"exact", to_literal(x)}, {"decimal", to_decimal(x)}};
}

template <Scalar T>
Json matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_literal(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Same layout as the input format, so emitted witnesses load back.
template <Scalar T>
Json metric_json(const DistanceMatrix<T>& x) {
  return Json{{"labels", x.labels()}, {"field", field_name(ScalarTraits<T>::kind)}, {"distances", matrix_json(x.matrix())}};
}

template <Scalar T>
Json projconst_json(const ProjConstResult<T>& r) {
  Json j{{"value", scalar_json(r.value)}, {"route", route_name(r.route)}};
  if (r.projection) j["projection"] = matrix_json(*r.projection);
  if (r.extension) j["extension"] = matrix_json(*r.extension);
  if (r.certificate) j["certificate"] = matrix_json(*r.certificate);
  j["verification"] = {{"lp", r.lp_verified}, {"certificate", r.certificate_verified}};
  j["diagnostics"] = {{"lp_rows", r.diagnostics.lp_rows},
                      {"lp_cols", r.diagnostics.lp_cols},
                      {"columns_generated", r.diagnostics.columns_generated},
                      {"iterations", r.diagnostics.iterations},
                      {"dualized", r.diagnostics.dualized}};
  j["warnings"] = r.warnings;
  return j;
}

template <Scalar T>
Json ae_report_json(const AeReport<T>& r) {
  Json lower = Json::array(), upper = Json::array();
  for (const auto& b : r.lower_bounds)
    lower.push_back({{"value", scalar_json(b.value)}, {"route", b.route}, {"exact_for_x", b.exact_for_x}, {"witness", metric_json(b.witness)}});
  for (const auto& b : r.upper_bounds) upper.push_back({{"value", scalar_json(b.value)}, {"method", b.method}});
  return Json{{"space", metric_json(r.space)},
              {"best_lower", scalar_json(r.best_lower)},
              {"best_upper", scalar_json(r.best_upper)},
              {"lower_bounds", lower},
              {"upper_bounds", upper},
              {"notes", r.notes}};
}

/// Calls f(T{}) with T the scalar type of the field.
template <class F>
decltype(auto) with_field(FieldKind k, F&& f) {
  switch (k) {
    case FieldKind::Rational: return f(Rational{});
    case FieldKind::Sqrt2: return f(QSqrt2{});
    case FieldKind::F64: break;
  }
  return f(Float{});
}

}  // namespace lipfree
