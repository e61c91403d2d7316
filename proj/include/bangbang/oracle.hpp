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

// Brute-force reference solutions: adaptive Dormand-Prince 5(4) integration
// of s' = v, v' = a - c0 v - c1 v^2, with event location. Independent of the
// closed forms; used to check them.

#pragma once

#include "bangbang/arc.hpp"
#include "bangbang/ocp.hpp"

namespace bangbang::oracle {

struct OracleSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  int max_steps = 1000000;
};

// Throws InvalidInputError unless both tolerances lie in (0, 1e-4] and
// max_steps >= 1000.
void validate(const OracleSettings& settings);

struct OracleState {
  double t = 0.0;
  double s = 0.0;
  double v = 0.0;
  int steps = 0;
};

// State at t_end (either sign) from (t, s, v) = (0, 0, v0). Throws
// OverflowError when |v| exceeds 1e12 and ConvergenceError when max_steps is
// exhausted.
[[nodiscard]] OracleState integrate_arc(const ArcInput& input, double t_end,
                                        const OracleSettings& settings = {});

// State at the first instant where s = zeta, integrating forwards for
// zeta > 0 and backwards for zeta < 0. Throws DomainError when the speed
// reaches zero before the crossing.
[[nodiscard]] OracleState state_at_space(const ArcInput& input, double zeta,
                                         const OracleSettings& settings = {});

[[nodiscard]] double locate_space_event(const ArcInput& input, double zeta,
                                        const OracleSettings& settings = {});

struct ShootingResult {
  double switch_speed = 0.0;     // speed at s_sigma after full acceleration
  double terminal_space = 0.0;   // abscissa where the braking phase ends
  double terminal_speed = 0.0;   // speed there
  double total_time = 0.0;
  bool stopped_early = false;    // braking reached zero speed before L
  // Terminal speed residual. If the vehicle stops at s_stop < L, the
  // residual is -(v_f + sqrt(2 a_minus (L - s_stop))): the speed deficit
  // extended past the stop by drag-free braking, so it stays signed and
  // continuous.
  double speed_residual = 0.0;
  double space_residual = 0.0;   // terminal_space - L
  // Speed at s_sigma of full braking integrated backwards from (L, v_f),
  // minus switch_speed.
  double switch_mismatch = 0.0;
};

// Full acceleration from (0, v_i) up to s_sigma, then full braking until L
// or until the vehicle stops.
[[nodiscard]] ShootingResult shoot_bangbang(const BangBangProblem& problem, double s_sigma,
                                            const OracleSettings& settings = {});

}  // namespace bangbang::oracle
