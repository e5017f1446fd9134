// Copyright 2026 The isodense Authors
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

// Named invariant suites behind the `verify` subcommand.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isodense::detail {

struct CheckResult {
  std::string name;
  bool passed;
  double value;  // measured error or quantity
  double limit;  // threshold it is compared against
};

std::span<const std::string_view> verify_suite_names();

/// Throws ConfigError for an unknown suite.
std::vector<CheckResult> run_verify_suite(std::string_view suite);

}  // namespace isodense::detail
