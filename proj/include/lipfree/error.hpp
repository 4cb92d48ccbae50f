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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lipfree {

enum class Errc {
  NotSquare,
  NotSymmetric,
  NonzeroDiagonal,
  NonPositiveDistance,
  TriangleViolation,
  SinglePoint,
  InvalidSize,
  SamePoint,
  TooLarge,
  OddVertexCount,
  NotATree,
  DisconnectedTree,
  NegativeWeight,
  NotASubset,
  BasepointMismatch,
  DimensionMismatch,
  VerticesUnavailable,
  RankDeficient,
  NumericFailure,
  PricerStall,
  NotInvariant,
  ZeroNuclearNorm,
  FieldUnsupported,
  InfeasiblePattern,
  BadDimensions,
  ParseError,
  FieldMismatch,
  AssertionFailed,
  Infeasible,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::NonPositiveDistance: return "NonPositiveDistance";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::SinglePoint: return "SinglePoint";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::SamePoint: return "SamePoint";
    case Errc::TooLarge: return "TooLarge";
    case Errc::OddVertexCount: return "OddVertexCount";
    case Errc::NotATree: return "NotATree";
    case Errc::DisconnectedTree: return "DisconnectedTree";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NotASubset: return "NotASubset";
    case Errc::BasepointMismatch: return "BasepointMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::VerticesUnavailable: return "VerticesUnavailable";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NumericFailure: return "NumericFailure";
    case Errc::PricerStall: return "PricerStall";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::ZeroNuclearNorm: return "ZeroNuclearNorm";
    case Errc::FieldUnsupported: return "FieldUnsupported";
    case Errc::InfeasiblePattern: return "InfeasiblePattern";
    case Errc::BadDimensions: return "BadDimensions";
    case Errc::ParseError: return "ParseError";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::AssertionFailed: return "AssertionFailed";
    case Errc::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code and, where relevant, the
/// indices that witness the failure (e.g. the (i, j, k) of a triangle
/// violation, zero-based).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> where = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        where_(std::move(where)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& where() const noexcept { return where_; }

 private:
  Errc code_;
  std::vector<std::size_t> where_;
};

}  // namespace lipfree
