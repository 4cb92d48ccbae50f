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

#include "lipfree/io.hpp"

#include <fstream>
#include <sstream>

namespace lipfree {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MetricDocument parse_metric_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(Errc::ParseError, "metric document must be a JSON object");
  MetricDocument doc;
  if (!j.contains("distances")) throw Error(Errc::ParseError, "missing 'distances'");
  doc.distances = j["distances"];
  if (!doc.distances.is_array()) throw Error(Errc::ParseError, "'distances' must be an array");
  if (j.contains("field")) {
    if (!j["field"].is_string()) throw Error(Errc::ParseError, "'field' must be a string");
    doc.field = parse_field_kind(j["field"].get<std::string>());
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw Error(Errc::ParseError, "'labels' must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw Error(Errc::ParseError, "labels must be strings");
      doc.labels.push_back(l.get<std::string>());
    }
  }
  return doc;
}

MetricDocument load_metric_document(const std::string& path) { return parse_metric_document(read_text_file(path)); }

}  // namespace lipfree
