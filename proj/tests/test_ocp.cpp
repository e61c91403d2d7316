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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bangbang/errors.hpp"
#include "bangbang/inverse.hpp"
#include "bangbang/ocp.hpp"
#include "bangbang/oracle.hpp"
#include "support/grid.hpp"

namespace bangbang {
namespace {

using testing::base_problem;

BangBangProblem stop_to_stop() { return {0.0, 0.0, 100.0, 2.0, 2.0, {0.0, 0.0}}; }

// Speed at abscissa s of full braking that arrives at (L, v_f), from the
// RK oracle.
double oracle_brake_speed(const BangBangProblem& p, double s) {
  if (s >= p.length) return p.v_f;
  return oracle::state_at_space({-p.a_minus, p.v_f, p.drag}, s - p.length).v;
}

double oracle_accel_speed(const BangBangProblem& p, double s) {
  if (s <= 0.0) return p.v_i;
  return oracle::state_at_space({p.a_plus, p.v_i, p.drag}, s).v;
}

// Distance actually covered by the two arcs over their time intervals.
double travelled(const BangBangSolution& sol) {
  return sol.left.space(sol.t_sigma) + (sol.right.space(0.0) - sol.right.space(sol.tau_sigma));
}

// Feasibility.

TEST(Feasibility, BaseProblemIsFeasible) {
  const Feasibility f = feasibility(base_problem());
  EXPECT_EQ(f.verdict, Verdict::kFeasible);
  EXPECT_LE(f.vf_min, 5.0);
  EXPECT_GE(f.vf_max, 5.0);
  EXPECT_NEAR(f.vf_max, oracle_accel_speed(base_problem(), 100.0), 1e-8 * f.vf_max);
}

TEST(Feasibility, StrongLinearDragIsTooFast) {
  BangBangProblem p = base_problem();
  p.drag.c0 = 0.5;
  const Feasibility f = feasibility(p);
  EXPECT_EQ(f.verdict, Verdict::kInfeasibleTooFast);
  EXPECT_LT(f.vf_max, p.v_f);
}

TEST(Feasibility, WeakAccelerationIsTooFast) {
  BangBangProblem p = base_problem();
  p.a_plus = 1e-6;
  EXPECT_EQ(feasibility(p).verdict, Verdict::kInfeasibleTooFast);
}

TEST(Feasibility, StopToStopIsFeasible) {
  for (double a : {0.25, 2.0, 10.0}) {
    for (double c : {0.0, 0.01, 0.5}) {
      const Feasibility f = feasibility({0.0, 0.0, 50.0, a, a, {c, c}});
      EXPECT_EQ(f.verdict, Verdict::kFeasible);
      EXPECT_EQ(f.vf_min, 0.0);
    }
  }
}

TEST(Feasibility, TooSlowWhenBrakingCannotShedSpeed) {
  // From 30 m/s at 2 m/s^2 over 10 m the speed stays above 29 m/s.
  const Feasibility f = feasibility({30.0, 0.0, 10.0, 2.0, 2.0, {0.0, 0.0}});
  EXPECT_EQ(f.verdict, Verdict::kInfeasibleTooSlow);
  EXPECT_NEAR(f.vf_min, std::sqrt(900.0 - 40.0), 1e-12);
}

TEST(Feasibility, VerdictNames) {
  EXPECT_EQ(verdict_name(Verdict::kFeasible), "Feasible");
  EXPECT_EQ(verdict_name(Verdict::kInfeasibleTooFast), "InfeasibleTooFast");
  EXPECT_EQ(verdict_name(Verdict::kInfeasibleTooSlow), "InfeasibleTooSlow");
}

TEST(BangBangProblem, Validation) {
  const BangBangProblem good = base_problem();
  auto broken = [&](auto mutate) {
    BangBangProblem p = good;
    mutate(p);
    return p;
  };
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.length = -1.0; })), InvalidInputError);
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.length = 0.0; })), InvalidInputError);
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.v_i = -1.0; })), InvalidInputError);
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.a_plus = 0.0; })), InvalidInputError);
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.a_minus = -2.0; })), InvalidInputError);
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.drag.c1 = -0.1; })), InvalidInputError);
  EXPECT_THROW(validate(broken([](BangBangProblem& p) { p.v_f = NAN; })), InvalidInputError);
  EXPECT_NO_THROW(validate(good));
}

// The verdict agrees with the ends of the switching function.
TEST(Feasibility, ConsistentWithSwitchFunctionEnds) {
  for (const BangBangProblem& p : testing::ocp_grid()) {
    const Feasibility f = feasibility(p);
    const Arc left({p.a_plus, p.v_i, p.drag});
    const Arc right({-p.a_minus, p.v_f, p.drag});
    const double g_end = velocity_at_space(left, p.length) - p.v_f;
    const double g_start = p.v_i - velocity_at_space(right, -p.length);
    const double tol = 1e-9 * (1.0 + std::max(p.v_i, p.v_f));
    if (f.verdict == Verdict::kFeasible) {
      EXPECT_GE(g_end, -tol);
      EXPECT_LE(g_start, tol);
    } else {
      EXPECT_TRUE(g_end < tol || g_start > -tol);
    }
    EXPECT_LE(f.vf_min, f.vf_max);
  }
}

// Solve examples.

TEST(Solve, DragFreeSymmetric) {
  const BangBangSolution sol = solve(stop_to_stop());
  EXPECT_NEAR(sol.s_sigma, 50.0, 1e-9);
  EXPECT_NEAR(sol.total_time, 2.0 * std::sqrt(50.0), 1e-8);
  EXPECT_NEAR(sol.total_time, 14.1421356, 1e-7);
  EXPECT_NEAR(sol.t_sigma, std::sqrt(50.0), 1e-9);
  EXPECT_FALSE(sol.degenerate);
}

TEST(Solve, BaseProblem) {
  const BangBangProblem p = base_problem();
  const BangBangSolution sol = solve(p);
  EXPECT_GT(sol.s_sigma, 0.0);
  EXPECT_LT(sol.s_sigma, 100.0);
  EXPECT_GT(sol.total_time, sol.t_sigma);
  EXPECT_FALSE(sol.degenerate);
  EXPECT_LE(std::fabs(sol.left.velocity(0.0) - 6.0), 1e-9);
  EXPECT_LE(std::fabs(sol.right.velocity(0.0) - 5.0), 1e-9);
  EXPECT_LE(std::fabs(travelled(sol) - 100.0), 1e-7);

  // Oracle 1: bisection on g with both speeds from the RK integrator.
  double lo = 0.0;
  double hi = p.length;
  while (hi - lo > 1e-10) {
    const double mid = (lo + hi) / 2.0;
    (oracle_accel_speed(p, mid) < oracle_brake_speed(p, mid) ? lo : hi) = mid;
  }
  EXPECT_NEAR(sol.s_sigma, (lo + hi) / 2.0, 1e-7);

  // Oracle 2: RK shooting through the computed switch.
  const oracle::ShootingResult shot = oracle::shoot_bangbang(p, sol.s_sigma);
  EXPECT_LE(std::fabs(shot.speed_residual), 1e-7);
  EXPECT_LE(std::fabs(shot.space_residual), 1e-7);
  EXPECT_NEAR(shot.total_time, sol.total_time, 1e-7);
}

TEST(Solve, PureAccelerationIsDegenerate) {
  BangBangProblem p = base_problem();
  p.v_f = feasibility(p).vf_max;
  const BangBangSolution sol = solve(p);
  EXPECT_DOUBLE_EQ(sol.s_sigma, p.length);
  EXPECT_TRUE(sol.degenerate);
  EXPECT_EQ(sol.tau_sigma, 0.0);
  EXPECT_NEAR(sol.total_time, time_at_space(sol.left, p.length).t, 1e-12);
}

TEST(Solve, PureBrakingIsDegenerate) {
  BangBangProblem p{20.0, 0.0, 50.0, 2.0, 2.0, {0.01, 0.01}};
  p.v_f = feasibility(p).vf_min;
  ASSERT_GT(p.v_f, 0.0);
  const BangBangSolution sol = solve(p);
  EXPECT_EQ(sol.s_sigma, 0.0);
  EXPECT_TRUE(sol.degenerate);
  EXPECT_EQ(sol.t_sigma, 0.0);
  EXPECT_NEAR(sol.right.velocity(sol.tau_sigma), 20.0, 1e-9);
}

TEST(Solve, InfeasibleThrows) {
  BangBangProblem p = base_problem();
  p.drag.c0 = 0.5;
  EXPECT_THROW((void)solve(p), InfeasibleProblemError);
}

TEST(Solve, TimeDomainSystemHolds) {
  const BangBangSolution sol = solve(base_problem());
  const TimeDomainResiduals r = time_domain_residuals(sol);
  EXPECT_LE(std::fabs(r.speed), 1e-8);
  EXPECT_LE(std::fabs(r.space), 1e-8);
}

// Grid-wide properties.

TEST(Solve, BoundaryResidualsAcrossGrid) {
  int feasible = 0;
  for (const BangBangProblem& p : testing::ocp_grid()) {
    if (feasibility(p).verdict != Verdict::kFeasible) continue;
    ++feasible;
    const BangBangSolution sol = solve(p);
    const double vl = sol.left.velocity(sol.t_sigma);
    const double vr = sol.right.velocity(sol.tau_sigma);
    const double v_peak = std::max({vl, vr, p.v_i, p.v_f});
    ASSERT_LE(std::fabs(vl - vr), 1e-9 * std::max(v_peak, 1.0))
        << p.v_i << " " << p.v_f << " " << p.length << " " << p.a_plus << " " << p.a_minus << " "
        << p.drag.c0 << " " << p.drag.c1;
    ASSERT_LE(std::fabs(travelled(sol) - p.length), 1e-7 * p.length);
    ASSERT_LE(std::fabs(sol.right.velocity(0.0) - p.v_f), 1e-8 * (1.0 + p.v_f));
    ASSERT_LE(std::fabs(sol.left.velocity(0.0) - p.v_i), 1e-8 * (1.0 + p.v_i));
    const TimeDomainResiduals r = time_domain_residuals(sol);
    ASSERT_LE(std::fabs(r.speed), 1e-8 * std::max(v_peak, 1.0));
    ASSERT_LE(std::fabs(r.space), 1e-8 * std::max(p.length, 1.0));
    ASSERT_GE(sol.s_sigma, 0.0);
    ASSERT_LE(sol.s_sigma, p.length);
    ASSERT_GE(sol.t_sigma, 0.0);
    ASSERT_LE(sol.t_sigma, sol.total_time);
  }
  RecordProperty("feasible_problems", feasible);
}

// A sparse subset is re-shot through the RK integrator.
TEST(Solve, ShootingOracleAcrossGrid) {
  const std::vector<BangBangProblem> grid = testing::ocp_grid();
  for (std::size_t k = 0; k < grid.size(); k += 41) {
    const BangBangProblem& p = grid[k];
    if (feasibility(p).verdict != Verdict::kFeasible) continue;
    const BangBangSolution sol = solve(p);
    const oracle::ShootingResult shot = oracle::shoot_bangbang(p, sol.s_sigma);
    const double scale = 1.0 + std::max(p.v_i, p.v_f);
    EXPECT_LE(std::fabs(shot.switch_mismatch), 1e-7 * scale) << "problem " << k;
    EXPECT_LE(std::fabs(shot.total_time - sol.total_time), 1e-7 * sol.total_time)
        << "problem " << k;
  }
}

TEST(Solve, QuadratureMatchesTotalTimeAcrossGrid) {
  for (const BangBangProblem& p : testing::ocp_grid()) {
    if (feasibility(p).verdict != Verdict::kFeasible) continue;
    const BangBangSolution sol = solve(p);
    const double quad = total_time_quadrature(sol, 16);
    ASSERT_LE(std::fabs(quad - sol.total_time), 1e-6 * sol.total_time)
        << p.v_i << " " << p.v_f << " " << p.length << " " << p.a_plus << " " << p.a_minus << " "
        << p.drag.c0 << " " << p.drag.c1;
  }
}

// Moving the switch by 1% either misses the end conditions or is slower.
TEST(Solve, PerturbedSwitchIsNotBetter) {
  std::mt19937_64 rng(23);
  const std::vector<BangBangProblem> grid = testing::ocp_grid();
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  int probed = 0;
  while (probed < 10) {
    const BangBangProblem& p = grid[pick(rng)];
    if (feasibility(p).verdict != Verdict::kFeasible) continue;
    const BangBangSolution sol = solve(p);
    if (sol.degenerate) continue;
    ++probed;
    for (double factor : {0.99, 1.01}) {
      const double s = std::min(sol.s_sigma * factor, p.length);
      const oracle::ShootingResult shot = oracle::shoot_bangbang(p, s);
      const bool breaks = std::fabs(shot.speed_residual) > 1e-4;
      EXPECT_TRUE(breaks || shot.total_time > sol.total_time)
          << "factor " << factor << " residual " << shot.speed_residual;
    }
  }
}

// Sampling.

TEST(Sample, TwoSamplesAreTheBoundaryRows) {
  const BangBangSolution sol = solve(base_problem());
  const std::vector<TrajectorySample> rows = sample_trajectory(sol, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].s, 0.0);
  EXPECT_EQ(rows[0].t, 0.0);
  EXPECT_EQ(rows[0].v, 6.0);
  EXPECT_EQ(rows[0].a, 2.0);
  EXPECT_EQ(rows[0].phase, Phase::kAccel);
  EXPECT_EQ(rows[1].s, 100.0);
  EXPECT_NEAR(rows[1].t, sol.total_time, 1e-12);
  EXPECT_NEAR(rows[1].v, 5.0, 1e-12);
  EXPECT_EQ(rows[1].a, -2.0);
  EXPECT_EQ(rows[1].phase, Phase::kBrake);
  EXPECT_THROW((void)sample_trajectory(sol, 1), InvalidInputError);
}

TEST(Sample, OrderingAndPhases) {
  for (const BangBangProblem& p :
       {base_problem(), stop_to_stop(), BangBangProblem{0.0, 15.0, 1000.0, 10.0, 0.25, {0.01, 0.001}}}) {
    const BangBangSolution sol = solve(p);
    const std::vector<TrajectorySample> rows = sample_trajectory(sol, 401);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      EXPECT_GT(rows[k].s, rows[k - 1].s);
      EXPECT_GT(rows[k].t, rows[k - 1].t);
    }
    for (const TrajectorySample& r : rows) {
      EXPECT_EQ(r.phase == Phase::kAccel, r.s < sol.s_sigma);
      EXPECT_EQ(r.a, r.phase == Phase::kAccel ? p.a_plus : -p.a_minus);
      EXPECT_NEAR(r.v, speed_at(sol, r.s), 1e-9 * (1.0 + r.v));
    }
  }
}

TEST(Sample, ContinuousAtSwitch) {
  const BangBangSolution sol = solve(base_problem());
  const double from_left = velocity_at_space(sol.left, sol.s_sigma);
  const double from_right = velocity_at_space(sol.right, sol.s_sigma - 100.0);
  EXPECT_NEAR(from_left, from_right, 1e-6);
  const std::vector<TrajectorySample> rows = sample_trajectory(sol, 1001);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k - 1].phase != rows[k].phase) {
      EXPECT_NEAR(rows[k - 1].v, rows[k].v, 0.05);
    }
  }
}

TEST(Sample, DragFreePeak) {
  const BangBangSolution sol = solve(stop_to_stop());
  const std::vector<TrajectorySample> rows = sample_trajectory(sol, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].s, 50.0);
  EXPECT_NEAR(rows[1].v, std::sqrt(200.0), 1e-9);
  EXPECT_NEAR(rows[1].t, std::sqrt(50.0), 1e-9);
}

TEST(Sample, EnvelopesCoverBothCurves) {
  BangBangProblem p = base_problem();
  p.drag.c0 = 0.5;
  const std::vector<TrajectorySample> rows = sample_envelopes(p, 5);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0].phase, Phase::kEnvelopeAccel);
  EXPECT_EQ(rows[0].v, 6.0);
  EXPECT_NEAR(rows[4].v, feasibility(p).vf_max, 1e-12);
  EXPECT_EQ(rows[5].phase, Phase::kEnvelopeBrake);
  EXPECT_EQ(rows[5].t, 0.0);
  EXPECT_NEAR(rows[9].v, 5.0, 1e-12);
  for (std::size_t k = 1; k < 5; ++k) EXPECT_GT(rows[k].t, rows[k - 1].t);
  for (std::size_t k = 6; k < 10; ++k) EXPECT_GT(rows[k].t, rows[k - 1].t);
}

TEST(Sample, PhaseNames) {
  EXPECT_EQ(phase_name(Phase::kAccel), "accel");
  EXPECT_EQ(phase_name(Phase::kBrake), "brake");
  EXPECT_EQ(phase_name(Phase::kEnvelopeAccel), "envelope_accel");
  EXPECT_EQ(phase_name(Phase::kEnvelopeBrake), "envelope_brake");
}

// Quadrature examples.

TEST(Quadrature, DragFreeSymmetric) {
  EXPECT_NEAR(total_time_quadrature(solve(stop_to_stop()), 16), 14.1421356, 1e-6);
}

TEST(Quadrature, BaseProblem) {
  const BangBangSolution sol = solve(base_problem());
  EXPECT_NEAR(total_time_quadrature(sol, 16), sol.total_time, 1e-6 * sol.total_time);
}

TEST(Quadrature, ConstantSpeedSingleArc) {
  const Arc probe({2.0, 0.0, {0.01, 0.01}});
  const double v_inf = probe.constants().v_inf;
  const BangBangProblem p{v_inf, v_inf, 100.0, 2.0, 2.0, {0.01, 0.01}};
  const BangBangSolution sol = solve(p);
  EXPECT_TRUE(sol.degenerate);
  EXPECT_NEAR(total_time_quadrature(sol, 4), 100.0 / v_inf, 1e-10);
  EXPECT_NEAR(sol.total_time, 100.0 / v_inf, 1e-10);
}

// Sweeps: every verdict agrees with the RK envelope.

TEST(Sweeps, VerdictsAgreeWithOracleEnvelope) {
  std::vector<BangBangProblem> problems;
  for (double x : testing::sweep_c0()) {
    BangBangProblem p = base_problem();
    p.drag.c0 = x;
    problems.push_back(p);
  }
  for (double x : testing::sweep_c1()) {
    BangBangProblem p = base_problem();
    p.drag.c1 = x;
    problems.push_back(p);
  }
  for (double x : testing::sweep_controls()) {
    BangBangProblem p = base_problem();
    p.a_plus = x;
    problems.push_back(p);
    p = base_problem();
    p.a_minus = x;
    problems.push_back(p);
  }
  for (const BangBangProblem& p : problems) {
    const Feasibility f = feasibility(p);
    const double vf_max = oracle_accel_speed(p, p.length);
    EXPECT_NEAR(f.vf_max, vf_max, 1e-8 * (1.0 + vf_max));
    EXPECT_EQ(f.verdict == Verdict::kInfeasibleTooFast, p.v_f > vf_max);
  }
}

TEST(Sweeps, QuadraticDragOrdersSpeeds) {
  const std::vector<double>& c1s = testing::sweep_c1();
  for (std::size_t k = 1; k < c1s.size(); ++k) {
    BangBangProblem lighter = base_problem();
    lighter.drag.c1 = c1s[k - 1];
    BangBangProblem heavier = base_problem();
    heavier.drag.c1 = c1s[k];
    const BangBangSolution a = solve(lighter);
    const BangBangSolution b = solve(heavier);
    const double shared = std::min(a.s_sigma, b.s_sigma);
    for (int i = 0; i <= 200; ++i) {
      const double s = shared * i / 200.0;
      EXPECT_LE(speed_at(b, s), speed_at(a, s) + 1e-12);
    }
  }
}

}  // namespace
}  // namespace bangbang
