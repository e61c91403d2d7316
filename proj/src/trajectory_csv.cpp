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

#include "bangbang/trajectory_csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bangbang/errors.hpp"

namespace bangbang {

namespace {

Phase parse_phase(const std::string& name) {
  for (Phase p : {Phase::kAccel, Phase::kBrake, Phase::kEnvelopeAccel, Phase::kEnvelopeBrake}) {
    if (name == phase_name(p)) return p;
  }
  throw InvalidInputError("trajectory csv: unknown phase '" + name + "'");
}

double parse_number(const std::string& field) {
  if (field == "inf") return INFINITY;
  if (field == "-inf") return -INFINITY;
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw InvalidInputError("trajectory csv: bad number '" + field + "'");
  }
  return x;
}

}  // namespace

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples) {
  out << kTrajectoryHeader << '\n';
  for (const TrajectorySample& r : samples) {
    out << format_number(r.s) << ',' << format_number(r.t) << ',' << format_number(r.v) << ','
        << format_number(r.a) << ',' << phase_name(r.phase) << '\n';
  }
}

std::vector<TrajectorySample> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) {
    throw InvalidInputError("trajectory csv: missing or wrong header");
  }
  std::vector<TrajectorySample> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string f[5];
    for (int i = 0; i < 5; ++i) {
      if (!std::getline(fields, f[i], ',')) {
        throw InvalidInputError("trajectory csv: short row '" + line + "'");
      }
    }
    rows.push_back({parse_number(f[0]), parse_number(f[1]), parse_number(f[2]),
                    parse_number(f[3]), parse_phase(f[4])});
  }
  return rows;
}

}  // namespace bangbang
