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

#include "bangbang/arc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bangbang/errors.hpp"
#include "bangbang/kernels.hpp"

namespace bangbang {

namespace {

using kernels::atan_ratio;
using kernels::exp_pair;
using kernels::exp_ratio;
using kernels::log_ratio;
using kernels::sin_ratio;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Beyond this value of beta*t the factor e^{beta t} in the general space
// formula is replaced by the bounded representation.
constexpr double kLargeExponent = 300.0;

// The direct log form of the space at the zero-speed instant of a rising
// arc is used when w exceeds this value.
constexpr double kDirectStopSpaceMinRate = 0.1;

// log(1 - w x) / w where one_minus is 1 - w x computed without cancellation
// by the caller; the series-backed kernel is used while w x is small.
double log_ratio_from(double x, double w, double one_minus) {
  if (std::fabs(w * x) < 0.5) return log_ratio(x, w);
  return std::log(one_minus) / w;
}

[[noreturn]] void throw_out_of_domain(double t, const ArcDomain& d) {
  std::ostringstream os;
  os.precision(17);
  os << "arc: time " << t << " outside the interval of existence [" << d.t_min << ", " << d.t_max
     << "]";
  throw DomainError(os.str());
}

}  // namespace

char case_letter(ArcCase c) {
  switch (c) {
    case ArcCase::kConstant: return 'A';
    case ArcCase::kRising: return 'B';
    case ArcCase::kFalling: return 'C';
    case ArcCase::kBraking: return 'D';
    case ArcCase::kBrakingComplex: return 'E';
  }
  return '?';
}

std::string_view case_name(ArcCase c) {
  switch (c) {
    case ArcCase::kConstant: return "constant";
    case ArcCase::kRising: return "rising";
    case ArcCase::kFalling: return "falling";
    case ArcCase::kBraking: return "braking";
    case ArcCase::kBrakingComplex: return "braking-complex";
  }
  return "unknown";
}

Arc::Arc(const ArcInput& input) : input_(input), t_zero_(kNaN), t_blowup_(kNaN) {
  const double a = input.a;
  const double v0 = input.v0;
  const double c0 = input.drag.c0;
  const double c1 = input.drag.c1;
  if (!std::isfinite(a) || !std::isfinite(v0) || !std::isfinite(c0) || !std::isfinite(c1)) {
    throw InvalidInputError("arc: non-finite input");
  }
  if (v0 < 0.0) throw InvalidInputError("arc: initial speed must be nonnegative");
  if (c0 < 0.0 || c1 < 0.0) throw InvalidInputError("arc: drag coefficients must be nonnegative");

  const double radicand = c0 * c0 + 4.0 * a * c1;
  k_.delta = (c1 * v0 + c0) * v0;

  if (radicand >= 0.0) {
    const double w = std::sqrt(radicand);
    k_.w = w;
    k_.alpha = (w + c0) / 2.0;
    // a c1 / alpha avoids the cancellation in (w - c0) / 2 when a c1 is small.
    k_.beta = k_.alpha > 0.0 ? a * c1 / k_.alpha : (w - c0) / 2.0;
    k_.gamma = c1 * v0 + k_.alpha;
    if (k_.alpha > 0.0) {
      k_.v_inf = a / k_.alpha;
    } else {
      k_.v_inf = a > 0.0 ? kInf : (a < 0.0 ? -kInf : 0.0);
    }

    const double tol = 1e-12 * (std::fabs(a) + 1.0);
    k_.gamma_minus_w = c1 * v0 - k_.beta;
    const double gamma_minus_w = k_.gamma_minus_w;

    if (a < 0.0) {
      case_ = ArcCase::kBraking;
    } else if (std::fabs(v0 * k_.alpha - a) <= tol && std::fabs(a - k_.delta) <= tol) {
      case_ = ArcCase::kConstant;
    } else if (a - k_.alpha * v0 > 0.0) {
      // Same sign as v_inf - v0, and still meaningful when alpha = 0.
      case_ = ArcCase::kRising;
    } else {
      case_ = ArcCase::kFalling;
    }

    // Zero-speed and blow-up instants; 1 - w x is formed from the exact
    // differences a - alpha v0 and c1 v0 - beta.
    auto zero_time = [&] {
      const double denom = a + v0 * k_.beta;
      return log_ratio_from(v0 / denom, w, (a - k_.alpha * v0) / denom);
    };
    auto blowup_time = [&] {
      return log_ratio_from(1.0 / k_.gamma, w, gamma_minus_w / k_.gamma);
    };

    switch (case_) {
      case ArcCase::kConstant:
        domain_ = {-kInf, kInf, -kInf, kInf, 0, false};
        break;
      case ArcCase::kRising: {
        t_zero_ = zero_time();
        double s_zero;
        if (w > kDirectStopSpaceMinRate) {
          s_zero = (log_ratio_from(v0, k_.alpha / a, (a - k_.alpha * v0) / a) +
                    log_ratio(-v0, c1 / k_.alpha)) /
                   w;
        } else {
          s_zero = real_space(t_zero_);
        }
        domain_ = {t_zero_, kInf, s_zero, kInf, +1, true};
        break;
      }
      case ArcCase::kFalling:
        if (gamma_minus_w > 0.0) t_blowup_ = blowup_time();
        domain_ = {gamma_minus_w > 0.0 ? t_blowup_ : -kInf, kInf, -kInf, kInf, -1, false};
        break;
      case ArcCase::kBraking:
        t_zero_ = zero_time();
        if (gamma_minus_w > 0.0) t_blowup_ = blowup_time();
        domain_ = {gamma_minus_w > 0.0 ? t_blowup_ : -kInf, t_zero_, -kInf, real_space(t_zero_), -1,
                   false};
        break;
      case ArcCase::kBrakingComplex:
        break;
    }
  } else {
    case_ = ArcCase::kBrakingComplex;
    const double w = std::sqrt(-radicand);
    const double abs_a = -a;
    const double k = 2.0 * c1 * v0 + c0;
    k_.w = w;
    k_.complex = true;
    k_.theta = std::atan2(w, c0);
    k_.theta0 = std::atan2(v0 * w, v0 * c0 + 2.0 * abs_a);
    k_.theta1 = std::atan2(w, k);
    k_.ell1 = std::sqrt(c1 * (k_.delta + abs_a));
    k_.cos_theta1 = k / (2.0 * k_.ell1);
    k_.sin_theta1 = w / (2.0 * k_.ell1);

    t_zero_ = 2.0 * atan_ratio(v0 / (v0 * c0 + 2.0 * abs_a), w);
    // -2 theta1 / w, through the series-safe kernel.
    t_blowup_ = k > 0.0 ? -2.0 * atan_ratio(1.0 / k, w) : -std::numbers::pi / w;

    double s_zero;
    if (std::fabs(t_zero_ * k_.ell1) <= kernels::kTrigRemainderSeriesLimit) {
      s_zero = complex_space(t_zero_);
    } else {
      s_zero = (std::log1p(k_.delta / abs_a) - c0 * t_zero_) / (2.0 * c1);
    }
    domain_ = {t_blowup_, t_zero_, -kInf, s_zero, -1, false};
  }

  if (std::isfinite(t_zero_)) zero_window_ = 100.0 * kEps * (1.0 + std::fabs(t_zero_));
  if (std::isfinite(t_blowup_)) blowup_window_ = 100.0 * kEps * (1.0 + std::fabs(t_blowup_));
}

double Arc::boundary_tolerance(double bound) const {
  return 1e-12 * (1.0 + std::fabs(bound));
}

bool Arc::contains_time(double t) const {
  if (std::isnan(t)) return false;
  if (t > domain_.t_max + boundary_tolerance(domain_.t_max)) return false;
  if (domain_.t_min_closed) return t >= domain_.t_min - boundary_tolerance(domain_.t_min);
  return t > domain_.t_min;
}

double Arc::velocity(double t) const {
  if (!contains_time(t)) throw_out_of_domain(t, domain_);
  if (case_ == ArcCase::kConstant) return input_.v0;
  t = std::fmin(t, domain_.t_max);
  if (domain_.t_min_closed) t = std::fmax(t, domain_.t_min);
  return k_.complex ? complex_velocity(t) : real_velocity(t);
}

double Arc::acceleration(double t) const {
  const double v = velocity(t);
  return input_.a - input_.drag.c0 * v - input_.drag.c1 * v * v;
}

double Arc::space(double t) const {
  if (std::isnan(t)) throw DomainError("arc: space evaluated at NaN");
  if (case_ == ArcCase::kConstant) return input_.v0 * t;
  if (t >= domain_.t_max) return domain_.s_max;
  if (t <= domain_.t_min) return domain_.s_min;
  return k_.complex ? complex_space(t) : real_space(t);
}

// v = [v0 - (a + v0 beta) E(t)] / [1 - gamma E(t)], E(t) = exp_ratio(t, w).
// Multiplying through by e^{-w t} gives the equivalent form in E(-t), which
// stays bounded for large positive t. Near the zero-speed and blow-up
// instants the numerator and denominator are re-anchored at those instants
// so that their roots are reproduced exactly.
double Arc::real_velocity(double t) const {
  const double a = input_.a;
  const double v0 = input_.v0;
  const double w = k_.w;
  const double gamma = k_.gamma;
  const double gmw = k_.gamma_minus_w;
  const bool near_zero = std::fabs(t - t_zero_) <= zero_window_;
  const bool near_blowup = std::fabs(t - t_blowup_) <= blowup_window_;

  if (t <= 0.0 || t > 1.0) {
    const double scale = near_zero || near_blowup ? std::exp(-w * t) : 1.0;
    const double e_back = exp_ratio(-t, w);
    const double q = near_blowup ? -gmw * exp_ratio(t - t_blowup_, w) * scale
                                 : 1.0 + gmw * e_back;
    if (near_zero) return (k_.alpha * v0 - a) * exp_ratio(t - t_zero_, w) * scale / q;
    return v0 + (a - k_.delta) * e_back / q;
  }
  const double e_fwd = exp_ratio(t, w);
  const double q =
      near_blowup ? -gmw * exp_ratio(t - t_blowup_, w) : 1.0 - gamma * e_fwd;
  if (near_zero) return (k_.alpha * v0 - a) * exp_ratio(t - t_zero_, w) / q;
  return v0 + (k_.delta - a) * e_fwd / q;
}

double Arc::complex_velocity(double t) const {
  const double v0 = input_.v0;
  const double c0 = input_.drag.c0;
  const double c1 = input_.drag.c1;
  const double abs_a = -input_.a;
  const double c = std::cos(t * k_.w / 2.0);
  const double s = sin_ratio(t / 2.0, k_.w);
  const double p = v0 * c - (c0 * v0 + 2.0 * abs_a) * s;
  const double q = c + (2.0 * c1 * v0 + c0) * s;
  return p / q;
}

// s(t) = log_ratio(a G(t) - v0 E(-t) e^{beta t}, c1) with G = exp_pair; for
// c1 = 0 the outer log_ratio degenerates to negation.
double Arc::real_space(double t) const {
  const double a = input_.a;
  const double v0 = input_.v0;
  const double c0 = input_.drag.c0;
  const double c1 = input_.drag.c1;
  const double w = k_.w;
  const double bt = k_.beta * t;
  double x;
  double offset = 0.0;
  if (bt > kLargeExponent) {
    // beta > 0 here, hence a > 0 and c1 > 0: s = v_inf t + L((v_inf - v0) E(-t), c1).
    offset = k_.v_inf * t;
    x = (k_.v_inf - v0) * exp_ratio(-t, w);
  } else {
    x = a * exp_pair(t, w, c0) - v0 * exp_ratio(-t, w) * std::exp(bt);
  }
  // Rounding right next to a blow-up instant can push 1 - c1 x to zero.
  if (c1 * x >= 1.0) return -kInf;
  return offset + log_ratio(x, c1);
}

double Arc::complex_space(double t) const {
  const double v0 = input_.v0;
  const double c0 = input_.drag.c0;
  const double c1 = input_.drag.c1;
  const double abs_a = -input_.a;
  const double tau = t * k_.ell1;
  if (std::fabs(tau) <= kernels::kTrigRemainderSeriesLimit) {
    const double q = kernels::log_trig_remainder(tau, k_.cos_theta1);
    return ((abs_a + k_.delta) * q * t + v0) * t;
  }
  // log of (2 c1 v0 + c0) S(t/2, w) + cos(t w / 2), written as log1p of the
  // deviation from one; cos(x) - 1 = -2 sin^2(x/2).
  const double half = std::sin(t * k_.w / 4.0);
  const double dev = (2.0 * c1 * v0 + c0) * sin_ratio(t / 2.0, k_.w) - 2.0 * half * half;
  if (dev <= -1.0) return -kInf;
  return (std::log1p(dev) - c0 * t / 2.0) / c1;
}

}  // namespace bangbang
