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

#include "bangbang/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bangbang/errors.hpp"

namespace bangbang {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// |v' f| / v^2 above which the Newton model is considered poor.
constexpr double kFarField = 0.25;

// Targets this close to an attained end of the space range snap to it.
double range_slack(double bound) { return 1e-12 * std::max(1.0, std::fabs(bound)); }

[[noreturn]] void throw_out_of_range(double zeta, const ArcDomain& d) {
  std::ostringstream os;
  os.precision(17);
  os << "time_at_space: target " << zeta << " outside the space range [" << d.s_min << ", "
     << d.s_max << "]";
  throw DomainError(os.str());
}

// Root z > 0 of e^z - 1 + (p - 1) z = r, for p >= 0 and r > 0. The left
// side is convex and increasing, so Newton started right of the root
// decreases to it monotonically.
double solve_growth(double p, double r) {
  // Each candidate is right of the root: e^z - 1 - z >= z^2 / 2, e^z - 1 >= z
  // and e^z >= 2 (1 + r) + ... once z >= log(2 (1 + r)).
  double z = std::min(std::sqrt(2.0 * r), std::log(2.0) + std::log1p(r));
  if (p > 0.0) z = std::min(z, r / p);
  for (int k = 0; k < 100; ++k) {
    const double dz = (std::expm1(z) + (p - 1.0) * z - r) / (std::expm1(z) + p);
    z -= dz;
    if (std::fabs(dz) <= 1e-14 * z) break;
  }
  return z;
}

// Root z > 0 of (p - 1) z - (e^{-z} - 1) = r, the first one if the left side
// turns over; NaN when it never reaches r. Concave, so Newton from 0 climbs
// monotonically.
double solve_decay(double p, double r) {
  double z = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double slope = p - 1.0 + std::exp(-z);
    if (!(slope > 0.0)) return std::nan("");
    const double dz = (r - ((p - 1.0) * z - std::expm1(-z))) / slope;
    z += dz;
    if (std::fabs(dz) <= 1e-14 * z) return z;
  }
  return z;
}

// Time for the speed to cover `distance` from rest under v' = m + lambda v
// (m > 0): the arc near its zero-speed instant with c1 dropped. Exact when
// c1 = 0. With z = lambda tau this is e^z - 1 - z = distance lambda^2 / m.
double time_from_rest(double distance, double m, double lambda) {
  if (!(distance > 0.0)) return 0.0;
  const double r = distance * lambda * lambda / m;
  if (lambda == 0.0 || r < 1e-4) return std::sqrt(2.0 * distance / m);
  if (lambda > 0.0) return solve_growth(0.0, r) / lambda;
  // y = -z solves e^{-y} - 1 + y = r; y = r + 1 is right of the root.
  double y = r + 1.0;
  for (int k = 0; k < 100; ++k) {
    const double dy = (std::expm1(-y) + y - r) / -std::expm1(-y);
    y -= dy;
    if (std::fabs(dy) <= 1e-14 * y) break;
  }
  return y / -lambda;
}

// Step (t_next = t - step) on the affine model v' = acc - kappa (v - v_k),
// kappa = c0 + 2 c1 v_k, the drag linearised at the current speed, for a
// decelerating arc (acc < 0). Exact for c1 = 0, where the speed moves
// exponentially and plain Newton crawls. Since the drag is convex in v the
// model decelerates less than the arc, so forwards it stops short of the
// root. NaN when the model cannot reach the target.
double affine_model_step(double f, double v, double acc, double kappa) {
  if (!(acc < 0.0) || !(kappa > 0.0)) return std::nan("");
  const double p = v * kappa / -acc;
  const double r = std::fabs(f) * kappa * kappa / -acc;
  if (f > 0.0) return solve_growth(p, r) / kappa;
  return -solve_decay(p, r) / kappa;
}

// Replacement point when the Newton step leaves (lo, hi).
double fallback_point(double lo, double hi, double expansion) {
  if (std::isfinite(lo) && std::isfinite(hi)) return lo + (hi - lo) / 2.0;
  if (std::isfinite(hi)) return hi - expansion * std::max(1.0, std::fabs(hi));
  return lo + expansion * std::max(1.0, std::fabs(lo));
}

InversionResult invert(const Arc& arc, double zeta, double t_start,
                       const InversionSettings& settings, std::vector<double>* trace) {
  validate(settings);
  if (std::isnan(zeta)) throw DomainError("time_at_space: target is NaN");
  const ArcDomain& d = arc.domain();

  if (arc.arc_case() == ArcCase::kConstant) {
    const double v0 = arc.input().v0;
    if (v0 == 0.0) {
      if (zeta == 0.0) return {0.0, 0, true, 0.0};
      throw DomainError("time_at_space: a resting arc only covers zeta = 0");
    }
    const double t = zeta / v0;
    return {t, 0, true, v0 * t - zeta};
  }
  if (zeta == 0.0) return {0.0, 0, true, 0.0};

  if (zeta >= d.s_max) {
    if (zeta - d.s_max > range_slack(d.s_max)) throw_out_of_range(zeta, d);
    return {d.t_max, 0, true, d.s_max - zeta};
  }
  if (zeta <= d.s_min) {
    if (!d.t_min_closed || d.s_min - zeta > range_slack(d.s_min)) throw_out_of_range(zeta, d);
    return {d.t_min, 0, true, d.s_min - zeta};
  }

  const bool barrier_available = !d.t_min_closed && std::isfinite(d.t_min);
  double lo = d.t_min;
  double hi = d.t_max;
  double t = t_start;
  if (!(t > lo && t <= hi) && !(d.t_min_closed && t == lo)) t = initial_guess(arc, zeta);

  for (int iter = 1; iter <= settings.max_iter; ++iter) {
    if (trace != nullptr) trace->push_back(t);
    double f;
    try {
      f = arc.space(t) - zeta;
    } catch (const OverflowError&) {
      // Far enough out that s(t) is not representable: the root is nearer 0.
      if (t < 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      t = fallback_point(lo, hi, settings.bracket_expansion);
      continue;
    }
    if (f == 0.0) return {t, iter, true, 0.0};
    const double v = arc.velocity(t);
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }

    double step;
    if (v == 0.0) {
      // Zero-speed end: f' vanishes, so step on the local parabola instead.
      const double curvature = std::fabs(arc.acceleration(t));
      step = std::copysign(std::sqrt(2.0 * std::fabs(f) / curvature), f);
    } else {
      if (f > 0.0 && barrier_available) {
        step = f / (v + f / (t - d.t_min));
      } else {
        step = f / v;
      }
      // Far from the root the speed may change by orders of magnitude over
      // one step. There the affine-model step is taken: forwards always (it
      // still undershoots), backwards when it is the shorter one (so the
      // barrier guarantee carries over).
      const double acc = arc.acceleration(t);
      if (std::fabs(acc * f) > kFarField * v * v) {
        const double drag = arc.input().drag.c0 + 2.0 * arc.input().drag.c1 * v;
        const double model_step = affine_model_step(f, v, acc, drag);
        if (std::isfinite(model_step) && (f < 0.0 || model_step < step)) step = model_step;
      }
    }

    const bool small_residual =
        std::fabs(f) <= settings.abs_tol * (1.0 + std::fabs(zeta)) * std::max(1.0, v);
    double t_next = t - step;
    // Converged steps are accepted before the bracket test: a step below the
    // resolution of t can round onto the bracket end it came from.
    if (small_residual && std::fabs(step) <= settings.abs_tol * (1.0 + std::fabs(t))) {
      if (!(t_next > lo && t_next < hi)) t_next = t;
      if (trace != nullptr) trace->push_back(t_next);
      return {t_next, iter, true, arc.space(t_next) - zeta};
    }
    if (!std::isfinite(t_next) || t_next <= lo || t_next >= hi) {
      t_next = fallback_point(lo, hi, settings.bracket_expansion);
    }

    // The bracket has shrunk to a few ulps; nothing more to gain.
    if (std::isfinite(lo) && std::isfinite(hi) &&
        hi - lo <= 4.0 * kEps * std::max(std::fabs(lo), std::fabs(hi))) {
      return {t, iter, small_residual, f};
    }
    t = t_next;
  }
  std::ostringstream os;
  os.precision(17);
  os << "time_at_space: no convergence after " << settings.max_iter << " iterations (zeta = "
     << zeta << ", case " << case_letter(arc.arc_case()) << ")";
  throw ConvergenceError(os.str());
}

}  // namespace

void validate(const InversionSettings& settings) {
  if (!(settings.abs_tol > 0.0)) throw InvalidInputError("InversionSettings: abs_tol must be > 0");
  if (settings.max_iter < 8) throw InvalidInputError("InversionSettings: max_iter must be >= 8");
  if (!(settings.bracket_expansion > 1.0)) {
    throw InvalidInputError("InversionSettings: bracket_expansion must be > 1");
  }
}

double initial_guess(const Arc& arc, double zeta) {
  const ArcDomain& d = arc.domain();
  const double a = arc.input().a;
  const double c0 = arc.input().drag.c0;
  double t = 0.0;
  if (arc.arc_case() == ArcCase::kRising) {
    const double v0 = arc.input().v0;
    if (zeta * a > 0.0) {
      // Root of v0 t + a t^2 / 2 = zeta, in the cancellation-free form.
      t = 2.0 * zeta / (v0 + std::sqrt(v0 * v0 + 2.0 * a * zeta));
    } else if (d.t_min_closed && zeta - d.s_min < -zeta) {
      // Nearer the start from rest than the anchor.
      t = d.t_min + time_from_rest(zeta - d.s_min, a, -c0);
    }
  } else if (std::isfinite(d.t_max) && (zeta > 0.0 || arc.input().v0 == 0.0)) {
    // Braking to a stop. Ignoring c1 underestimates the deceleration, so this
    // lands left of the root, as 0 does for zeta > 0; take the nearer one.
    t = d.t_max - time_from_rest(d.s_max - zeta, -a, c0);
    if (zeta > 0.0) t = std::max(t, 0.0);
  }
  if (!d.t_min_closed && !(t > d.t_min)) t = 0.0;
  return std::clamp(t, d.t_min, d.t_max);
}

InversionResult time_at_space(const Arc& arc, double zeta, const InversionSettings& settings) {
  return invert(arc, zeta, initial_guess(arc, zeta), settings, nullptr);
}

InversionResult time_at_space_from(const Arc& arc, double zeta, double t_start,
                                   const InversionSettings& settings) {
  return invert(arc, zeta, t_start, settings, nullptr);
}

InversionResult time_at_space_traced(const Arc& arc, double zeta, std::vector<double>* iterates,
                                     const InversionSettings& settings) {
  return invert(arc, zeta, initial_guess(arc, zeta), settings, iterates);
}

double velocity_at_space(const Arc& arc, double zeta, const InversionSettings& settings) {
  return arc.velocity(time_at_space(arc, zeta, settings).t);
}

}  // namespace bangbang
