// Copyright 2026 The bangbang Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bangbang::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

struct ScenarioConfig {
  double v0 = 6.0;
  double vf = 5.0;
  double length = 100.0;
  double a_plus = 2.0;
  double a_minus = 2.0;
  double c0 = 0.01;
  double c1 = 0.01;
  int samples = 400;
};

struct SweepSpec {
  std::string parameter;  // c0, c1, a_plus or a_minus
  std::vector<double> values;
};

// Parses "<param>=<v1>,<v2>,...". Throws InvalidInputError.
[[nodiscard]] SweepSpec parse_sweep(const std::string& text);

// Entry point of the `bangbang` executable; returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bangbang::cli
