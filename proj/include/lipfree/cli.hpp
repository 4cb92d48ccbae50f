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

// Command-line front end. run_cli() is the whole program; the executable
// only forwards argv.
//
// Exit codes: 0 success, 1 invalid input or failed computation,
// 2 ParseError (including usage errors), 3 FieldMismatch, 4 AssertionFailed.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lipfree {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipfree
