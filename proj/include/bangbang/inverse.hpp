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

// Inversion of the space map of an arc: the time t at which s(t) = zeta.
//
// f(t) = s(t) - zeta is monotone with f' = v >= 0. Newton is run on f; when
// the arc blows up at a finite t_min and f(t) > 0, the step is taken on the
// model function a_k - b_k / (t - t_min) instead, which never jumps across
// the blow-up instant. Far from the root, where the speed changes by orders
// of magnitude over one step, a shorter step on an exponential model is used
// instead. A bracket maintained from the signs of f backs the iteration with
// bisection.

#pragma once

#include <vector>

#include "bangbang/arc.hpp"

namespace bangbang {

struct InversionSettings {
  double abs_tol = 1e-12;
  int max_iter = 50;
  double bracket_expansion = 2.0;
};

// Throws InvalidInputError unless abs_tol > 0, max_iter >= 8 and
// bracket_expansion > 1.
void validate(const InversionSettings& settings);

struct InversionResult {
  double t = 0.0;
  int iterations = 0;
  bool converged = false;
  double f_residual = 0.0;  // s(t) - zeta
};

// Throws DomainError for zeta outside the space range of the arc and
// ConvergenceError when max_iter is exhausted.
[[nodiscard]] InversionResult time_at_space(const Arc& arc, double zeta,
                                            const InversionSettings& settings = {});

// Same, starting the iteration at t_start (clamped into the domain) instead of
// the default initial guess. Useful when solving for nearby targets in turn.
[[nodiscard]] InversionResult time_at_space_from(const Arc& arc, double zeta, double t_start,
                                                 const InversionSettings& settings = {});

// Same as time_at_space; every point at which f was evaluated is appended to
// *iterates.
[[nodiscard]] InversionResult time_at_space_traced(const Arc& arc, double zeta,
                                                   std::vector<double>* iterates,
                                                   const InversionSettings& settings = {});

// v(t(zeta)).
[[nodiscard]] double velocity_at_space(const Arc& arc, double zeta,
                                       const InversionSettings& settings = {});

// Starting point of the iteration. Rising regime: the drag-free travel time
// for targets ahead, and for targets nearer the start from rest, the time
// from rest under linear drag. Arcs that stop at a finite t_max: the time
// before the stop under linear drag (at least 0 for targets ahead). Zero
// otherwise. Always inside the time domain.
[[nodiscard]] double initial_guess(const Arc& arc, double zeta);

}  // namespace bangbang
