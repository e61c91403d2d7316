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

// Minimum-time travel over a path of length L between prescribed speeds,
// with control bounded in [-a_minus, a_plus]. The optimal control is full
// acceleration followed by full braking. Both phases are closed-form arcs;
// the switching abscissa is the root of g(s) = v_accel(s) - v_brake(s),
// where v_accel is the speed reached from v_i under full acceleration and
// v_brake the speed from which full braking arrives at L with v_f.

#pragma once

#include <string_view>
#include <vector>

#include "bangbang/arc.hpp"
#include "bangbang/inverse.hpp"

namespace bangbang {

struct BangBangProblem {
  double v_i = 0.0;
  double v_f = 0.0;
  double length = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  DragParams drag;
};

// Throws InvalidInputError when the problem data are not admissible.
void validate(const BangBangProblem& problem);

enum class Verdict { kFeasible, kInfeasibleTooFast, kInfeasibleTooSlow };

[[nodiscard]] std::string_view verdict_name(Verdict verdict);

struct Feasibility {
  double vf_max = 0.0;  // final speed under full acceleration over L
  double vf_min = 0.0;  // final speed under full braking (0 if it stops short)
  Verdict verdict = Verdict::kFeasible;
};

// Relative slack applied to the envelope comparison, so that a v_f computed
// from the envelope itself is not rejected by rounding.
inline constexpr double kFeasibilitySlack = 1e-10;

[[nodiscard]] Feasibility feasibility(const BangBangProblem& problem);

struct BangBangSolution {
  BangBangProblem problem;
  double s_sigma = 0.0;
  double t_sigma = 0.0;
  double total_time = 0.0;
  // Local time of the switch on the braking arc (<= 0).
  double tau_sigma = 0.0;
  // Full acceleration from (t, s, v) = (0, 0, v_i).
  Arc left;
  // Full braking anchored at the end point: local time tau <= 0 maps to
  // t = total_time + tau, s = length + space(tau).
  Arc right;
  bool degenerate = false;
  int iterations = 0;
};

// Throws InfeasibleProblemError when the verdict is not Feasible.
[[nodiscard]] BangBangSolution solve(const BangBangProblem& problem);

enum class Phase { kAccel, kBrake, kEnvelopeAccel, kEnvelopeBrake };

[[nodiscard]] std::string_view phase_name(Phase phase);

struct TrajectorySample {
  double s = 0.0;
  double t = 0.0;
  double v = 0.0;
  double a = 0.0;  // control value of the phase
  Phase phase = Phase::kAccel;
};

// n >= 2 samples uniform in s over [0, L].
[[nodiscard]] std::vector<TrajectorySample> sample_trajectory(const BangBangSolution& solution,
                                                              int n);

// The two reference curves of an (infeasible) problem, n samples each over
// [0, L]: full acceleration from v_i, then full braking into v_f. The
// braking curve's time column starts at 0 at s = 0.
[[nodiscard]] std::vector<TrajectorySample> sample_envelopes(const BangBangProblem& problem, int n);

// Speed profile of the solution at abscissa s in [0, L].
[[nodiscard]] double speed_at(const BangBangSolution& solution, double s);

// T = int_0^L ds / v(s) by composite Gauss-Legendre over n panels per phase,
// each halved adaptively until the halves agree with the whole.
// Each phase is integrated in u = sqrt|s - s_rest| when its arc has a
// zero-speed abscissa s_rest at or beyond the phase, which removes the
// inverse square root singularity of 1/v there.
[[nodiscard]] double total_time_quadrature(const BangBangSolution& solution, int n);

// Residuals of the switching conditions written in the time domain:
// speed and position of the two arcs at t_sigma.
struct TimeDomainResiduals {
  double speed = 0.0;
  double space = 0.0;
};
[[nodiscard]] TimeDomainResiduals time_domain_residuals(const BangBangSolution& solution);

}  // namespace bangbang
