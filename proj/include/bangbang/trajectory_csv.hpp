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

// CSV form of trajectory samples: header `s,t,v,a,phase`, one row per
// sample, numbers with 12 significant digits, LF line endings.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bangbang/ocp.hpp"

namespace bangbang {

inline constexpr const char* kTrajectoryHeader = "s,t,v,a,phase";

// %.12g; -0 prints as 0, infinities as inf / -inf.
[[nodiscard]] std::string format_number(double x);

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples);

// Throws InvalidInputError on a malformed header, row or phase name.
[[nodiscard]] std::vector<TrajectorySample> read_trajectory_csv(std::istream& in);

}  // namespace bangbang
