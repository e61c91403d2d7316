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

// A constant-control arc of the longitudinal vehicle model
//
//   s'(t) = v(t),   v'(t) = a - c0 v(t) - c1 v(t)^2,   s(0) = 0, v(0) = v0,
//
// solved in closed form. The sign of the discriminant c0^2 + 4 a c1 and the
// position of v0 relative to the equilibrium speed split the solutions into
// five regimes (ArcCase). Each regime has its own interval of existence,
// bounded by the instant where the speed reaches zero and/or the instant
// where it blows up when followed backwards in time.

#pragma once

#include <string_view>

namespace bangbang {

struct DragParams {
  double c0 = 0.0;  // linear (laminar) drag, 1/s
  double c1 = 0.0;  // quadratic (aerodynamic) drag, 1/m
};

struct ArcInput {
  double a = 0.0;   // constant control acceleration, m/s^2
  double v0 = 0.0;  // speed at t = 0, m/s
  DragParams drag;
};

enum class ArcCase {
  kConstant,        // real discriminant, v0 equals the equilibrium speed
  kRising,          // real discriminant, v0 below the equilibrium speed
  kFalling,         // real discriminant, a >= 0, v0 above the equilibrium speed
  kBraking,         // real discriminant, a < 0
  kBrakingComplex,  // negative discriminant (always a < 0)
};

// 'A'..'E' in the conventional ordering of the five regimes.
[[nodiscard]] char case_letter(ArcCase c);
[[nodiscard]] std::string_view case_name(ArcCase c);

struct ArcConstants {
  // sqrt(|c0^2 + 4 a c1|); the discriminant sign is in `complex`.
  double w = 0.0;
  bool complex = false;
  double alpha = 0.0;  // (w + c0) / 2
  double beta = 0.0;   // (w - c0) / 2 = a c1 / alpha
  double gamma = 0.0;  // c1 v0 + alpha
  // gamma - w, formed as c1 v0 - beta; positive iff the speed blows up
  // backwards in time.
  double gamma_minus_w = 0.0;
  double v_inf = 0.0;  // a / alpha; the equilibrium speed when a > 0
  double delta = 0.0;  // (c1 v0 + c0) v0, the drag deceleration at v0
  // Angles of the negative-discriminant solution; zero otherwise.
  double theta = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double ell1 = 0.0;       // sqrt(c1 (delta + |a|))
  double cos_theta1 = 0.0;  // (2 c1 v0 + c0) / (2 ell1)
  double sin_theta1 = 0.0;  // w / (2 ell1)
};

struct ArcDomain {
  double t_min = 0.0;  // may be -inf
  double t_max = 0.0;  // may be +inf
  double s_min = 0.0;  // may be -inf
  double s_max = 0.0;  // may be +inf
  // Sign of v' on the domain.
  int speed_slope = 0;
  // True when t_min is attained (zero speed at t_min, rising regime); false
  // when t_min is an open end where the speed blows up or is unbounded.
  bool t_min_closed = false;
};

// An immutable closed-form arc anchored at t = 0, s = 0.
class Arc {
 public:
  // Throws InvalidInputError for v0 < 0, negative drag or non-finite data.
  explicit Arc(const ArcInput& input);

  [[nodiscard]] const ArcInput& input() const { return input_; }
  [[nodiscard]] const ArcConstants& constants() const { return k_; }
  [[nodiscard]] ArcCase arc_case() const { return case_; }
  [[nodiscard]] const ArcDomain& domain() const { return domain_; }

  // Instant where the speed reaches zero (rising: t_min, braking: t_max).
  // NaN when the regime has no such instant.
  [[nodiscard]] double zero_speed_time() const { return t_zero_; }
  // Instant where the speed blows up backwards in time; NaN when absent.
  [[nodiscard]] double blowup_time() const { return t_blowup_; }

  // Throws DomainError for t outside the domain beyond a rounding tolerance
  // (and for t at or before an open t_min).
  [[nodiscard]] double velocity(double t) const;

  // Travelled space s(t) = int_0^t v. Saturates to s_min / s_max outside
  // the time domain, as the inversion relies on; throws DomainError for NaN.
  [[nodiscard]] double space(double t) const;

  // a - c0 v(t) - c1 v(t)^2.
  [[nodiscard]] double acceleration(double t) const;

  // True when t lies in the evaluable time interval (with tolerance).
  [[nodiscard]] bool contains_time(double t) const;

 private:
  double real_velocity(double t) const;
  double complex_velocity(double t) const;
  double real_space(double t) const;
  double complex_space(double t) const;
  double boundary_tolerance(double bound) const;

  ArcInput input_;
  ArcConstants k_;
  ArcCase case_ = ArcCase::kConstant;
  ArcDomain domain_;
  double t_zero_;
  double t_blowup_;
  double zero_window_ = 0.0;
  double blowup_window_ = 0.0;
};

[[nodiscard]] inline Arc build_arc(const ArcInput& input) { return Arc(input); }

}  // namespace bangbang
