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

#include "bangbang/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bangbang/errors.hpp"

namespace bangbang::oracle {

namespace {

constexpr double kBlowupSpeed = 1e12;
constexpr int kRefineIterations = 200;

struct Vec {
  double s;
  double v;
};

Vec operator+(Vec x, Vec y) { return {x.s + y.s, x.v + y.v}; }
Vec operator*(double c, Vec x) { return {c * x.s, c * x.v}; }

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Integrator {
 public:
  Integrator(const ArcInput& input, const OracleSettings& settings)
      : a_(input.a), c0_(input.drag.c0), c1_(input.drag.c1), settings_(settings) {}

  Vec rhs(Vec y) const { return {y.v, a_ - c0_ * y.v - c1_ * y.v * y.v}; }

  // One step of size h; returns the new state and stores the scaled error.
  Vec step(Vec y, double h, double* err) const {
    const Vec k1 = rhs(y);
    const Vec k2 = rhs(y + (h * a21) * k1);
    const Vec k3 = rhs(y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    if (err != nullptr) {
      const Vec k7 = rhs(y_new);
      const Vec e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double ss = settings_.abs_tol +
                        settings_.rel_tol * std::max(std::fabs(y.s), std::fabs(y_new.s));
      const double sv = settings_.abs_tol +
                        settings_.rel_tol * std::max(std::fabs(y.v), std::fabs(y_new.v));
      *err = std::max(std::fabs(e.s) / ss, std::fabs(e.v) / sv);
      if (std::isnan(*err)) *err = std::numeric_limits<double>::infinity();
    }
    return y_new;
  }

 private:
  double a_, c0_, c1_;
  const OracleSettings& settings_;
};

enum class Stop { kTime, kTarget, kZeroSpeed };

struct RunResult {
  OracleState state;
  Stop reason;
};

// Integrates from (0, 0, v0) in the direction of `direction` until t_limit,
// until s crosses `target` (if finite), or, with stop_at_zero, until v drops
// to zero from a positive value. Crossings are refined by bisection on the length of a
// single step taken from the start of the step that contains them.
RunResult run(const ArcInput& input, double direction, double t_limit, double target,
              bool stop_at_zero, const OracleSettings& settings) {
  validate(settings);
  const Integrator integ(input, settings);
  Vec y{0.0, input.v0};
  double t = 0.0;
  double h = direction * std::min(1e-3, std::fabs(t_limit));
  double err_prev = 1.0;
  int steps = 0;
  const bool has_target = std::isfinite(target);

  auto target_crossed = [&](Vec z) { return has_target && direction * (z.s - target) >= 0.0; };
  auto stopped = [&](Vec from, Vec z) { return stop_at_zero && from.v > 0.0 && z.v <= 0.0; };

  if (has_target && target == 0.0) return {{0.0, 0.0, input.v0, 0}, Stop::kTarget};

  while (true) {
    if (steps >= settings.max_steps) {
      throw ConvergenceError("oracle: step budget exhausted");
    }
    bool last = false;
    if (std::isfinite(t_limit) && std::fabs(t + h) >= std::fabs(t_limit)) {
      h = t_limit - t;
      last = true;
    }
    double err = 0.0;
    const Vec y_new = integ.step(y, h, &err);
    ++steps;
    if (!(err <= 1.0)) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (std::fabs(h) < 1e-300) throw ConvergenceError("oracle: step size underflow");
      continue;
    }
    if (!std::isfinite(y_new.v) || std::fabs(y_new.v) > kBlowupSpeed) {
      std::ostringstream os;
      os << "oracle: speed exceeded " << kBlowupSpeed << " near t = " << t + h;
      throw OverflowError(os.str());
    }

    const bool hit_target = target_crossed(y_new);
    const bool hit_stop = stopped(y, y_new);
    if (hit_target || hit_stop) {
      // Bisect on the step length for the earliest of the two events.
      double lo = 0.0;
      double hi = h;
      for (int i = 0; i < kRefineIterations; ++i) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid == lo || mid == hi) break;
        const Vec z = integ.step(y, mid, nullptr);
        if (target_crossed(z) || stopped(y, z)) {
          hi = mid;
        } else {
          lo = mid;
        }
        if (std::fabs(hi - lo) <= 1e-15 * std::max(std::fabs(t), std::fabs(h))) break;
      }
      const Vec z = integ.step(y, hi, nullptr);
      const Stop reason = target_crossed(z) ? Stop::kTarget : Stop::kZeroSpeed;
      return {{t + hi, z.s, z.v, steps}, reason};
    }

    y = y_new;
    t += h;
    if (last) return {{t, y.s, y.v, steps}, Stop::kTime};

    double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.14) * std::pow(err_prev, 0.08);
    fac = std::clamp(fac, 0.2, 5.0);
    err_prev = std::max(err, 1e-4);
    h *= fac;
  }
}

void check_input(const ArcInput& input) {
  if (!std::isfinite(input.a) || !std::isfinite(input.v0) || !std::isfinite(input.drag.c0) ||
      !std::isfinite(input.drag.c1)) {
    throw InvalidInputError("oracle: non-finite input");
  }
}

}  // namespace

void validate(const OracleSettings& settings) {
  auto ok = [](double x) { return x > 0.0 && x <= 1e-4; };
  if (!ok(settings.rel_tol) || !ok(settings.abs_tol)) {
    throw InvalidInputError("OracleSettings: tolerances must lie in (0, 1e-4]");
  }
  if (settings.max_steps < 1000) throw InvalidInputError("OracleSettings: max_steps must be >= 1000");
}

OracleState integrate_arc(const ArcInput& input, double t_end, const OracleSettings& settings) {
  check_input(input);
  if (std::isnan(t_end)) throw InvalidInputError("oracle: t_end is NaN");
  if (t_end == 0.0) return {0.0, 0.0, input.v0, 0};
  const double direction = t_end > 0.0 ? 1.0 : -1.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return run(input, direction, t_end, nan, false, settings).state;
}

OracleState state_at_space(const ArcInput& input, double zeta, const OracleSettings& settings) {
  check_input(input);
  if (!std::isfinite(zeta)) throw InvalidInputError("oracle: target must be finite");
  const double direction = zeta >= 0.0 ? 1.0 : -1.0;
  const RunResult r =
      run(input, direction, direction * std::numeric_limits<double>::infinity(), zeta, true,
          settings);
  if (r.reason != Stop::kTarget) {
    std::ostringstream os;
    os.precision(17);
    os << "oracle: speed reaches zero at s = " << r.state.s << " before s = " << zeta;
    throw DomainError(os.str());
  }
  return r.state;
}

double locate_space_event(const ArcInput& input, double zeta, const OracleSettings& settings) {
  return state_at_space(input, zeta, settings).t;
}

ShootingResult shoot_bangbang(const BangBangProblem& problem, double s_sigma,
                              const OracleSettings& settings) {
  validate(problem);
  const double length = problem.length;
  if (!(s_sigma >= 0.0 && s_sigma <= length)) {
    throw InvalidInputError("shoot_bangbang: switch abscissa outside [0, L]");
  }
  const DragParams& drag = problem.drag;
  const double inf = std::numeric_limits<double>::infinity();

  OracleState accel{0.0, 0.0, problem.v_i, 0};
  if (s_sigma > 0.0) accel = state_at_space({problem.a_plus, problem.v_i, drag}, s_sigma, settings);

  ShootingResult out;
  out.switch_speed = accel.v;
  double brake_time = 0.0;
  if (s_sigma < length) {
    const RunResult brake =
        run({-problem.a_minus, accel.v, drag}, 1.0, inf, length - s_sigma, true, settings);
    brake_time = brake.state.t;
    out.terminal_space = s_sigma + brake.state.s;
    if (brake.reason == Stop::kZeroSpeed) {
      out.stopped_early = true;
      out.terminal_speed = 0.0;
      out.speed_residual =
          -(problem.v_f + std::sqrt(2.0 * problem.a_minus * (length - out.terminal_space)));
    } else {
      out.terminal_speed = brake.state.v;
      out.speed_residual = brake.state.v - problem.v_f;
    }
    const OracleState back =
        state_at_space({-problem.a_minus, problem.v_f, drag}, s_sigma - length, settings);
    out.switch_mismatch = back.v - accel.v;
  } else {
    out.terminal_space = length;
    out.terminal_speed = accel.v;
    out.speed_residual = accel.v - problem.v_f;
    out.switch_mismatch = problem.v_f - accel.v;
  }
  out.space_residual = out.terminal_space - length;
  out.total_time = accel.t + brake_time;
  return out;
}

}  // namespace bangbang::oracle
