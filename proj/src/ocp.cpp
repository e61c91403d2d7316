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

#include "bangbang/ocp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bangbang/errors.hpp"

namespace bangbang {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSwitchIterations = 100;
constexpr double kDegenerateFraction = 1e-9;
constexpr double kPanelRelTol = 1e-10;
constexpr int kMaxPanelDepth = 24;

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498, 0.5255324099163290,
                                               0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights = {0.3626837833783620, 0.3137066458778873,
                                                 0.2223810344533745, 0.1012285362903763};

Arc accel_arc(const BangBangProblem& p) { return Arc({p.a_plus, p.v_i, p.drag}); }
Arc brake_arc(const BangBangProblem& p) { return Arc({-p.a_minus, p.v_f, p.drag}); }

// Speeds of the two phases at a common abscissa, warm-started from the
// previous call.
class SwitchFunction {
 public:
  SwitchFunction(const Arc& left, const Arc& right, double length)
      : left_(left), right_(right), length_(length) {}

  struct Value {
    double g;
    double dg;
    double v_left;
    double v_right;
  };

  Value operator()(double s) {
    t_left_ = time_at_space_from(left_, s, t_left_).t;
    t_right_ = time_at_space_from(right_, s - length_, t_right_).t;
    const double vl = left_.velocity(t_left_);
    const double vr = right_.velocity(t_right_);
    const double a_plus = left_.input().a;
    const double a_minus = -right_.input().a;
    const double c1 = left_.input().drag.c1;
    return {vl - vr, a_plus / vl + a_minus / vr + c1 * (vr - vl), vl, vr};
  }

 private:
  const Arc& left_;
  const Arc& right_;
  double length_;
  double t_left_ = 0.0;
  double t_right_ = 0.0;
};

// Integral of 1/v over the arc's own targets from..to. 1/v has an inverse
// square root singularity at the target `rest` where the arc has zero speed;
// when that lies at or beyond an end (NaN if none), s = rest +- u^2 removes
// it. Working in arc targets keeps u^2 clear of the offset by L. It matters even
// when rest is slightly outside [from, to].
double phase_time(const Arc& arc, double from, double to, double rest, int panels) {
  if (!(to > from)) return 0.0;
  double t_warm = 0.0;
  auto inv_speed = [&](double target) {
    t_warm = time_at_space_from(arc, target, t_warm).t;
    return 1.0 / arc.velocity(t_warm);
  };
  // v ~ u sqrt(2 |a|) next to the rest point, where u^2 falls below the
  // resolution of the abscissa.
  const double rest_limit = 2.0 / std::sqrt(2.0 * std::fabs(arc.input().a));
  auto substituted = [&](double u, double target) {
    const double inv = inv_speed(target);
    return std::isfinite(inv) && inv > 0.0 ? 2.0 * u * inv : rest_limit;
  };
  double u_lo;
  double u_hi;
  std::function<double(double)> integrand;
  if (rest <= from) {
    u_lo = std::sqrt(from - rest);
    u_hi = std::sqrt(to - rest);
    integrand = [&](double u) { return substituted(u, std::min(rest + u * u, to)); };
  } else if (rest >= to) {
    u_lo = std::sqrt(rest - to);
    u_hi = std::sqrt(rest - from);
    integrand = [&](double u) { return substituted(u, std::max(rest - u * u, from)); };
  } else {
    u_lo = 0.0;
    u_hi = to - from;
    integrand = [&](double u) { return inv_speed(from + u); };
  }
  auto gauss = [&](double lo, double hi) {
    const double mid = (lo + hi) / 2.0;
    const double half = (hi - lo) / 2.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < kGaussNodes.size(); ++j) {
      const double dx = kGaussNodes[j] * half;
      sum += kGaussWeights[j] * (integrand(mid - dx) + integrand(mid + dx));
    }
    return sum * half;
  };
  // A rising or falling arc approaches its equilibrium speed within a few
  // metres, so fixed panels can miss a thin layer at a phase end. Each base
  // panel is halved until its two halves agree with the whole, to a fraction
  // of the coarse estimate for the phase so rounding noise cannot recurse.
  double scale = 0.0;
  std::function<double(double, double, double, int)> refine = [&](double lo, double hi,
                                                                   double whole, int depth) {
    const double mid = (lo + hi) / 2.0;
    const double left = gauss(lo, mid);
    const double right = gauss(mid, hi);
    const double both = left + right;
    if (depth >= kMaxPanelDepth || std::fabs(both - whole) <= kPanelRelTol * scale) {
      return both;
    }
    return refine(lo, mid, left, depth + 1) + refine(mid, hi, right, depth + 1);
  };
  const double h = (u_hi - u_lo) / panels;
  std::vector<double> coarse(panels);
  for (int k = 0; k < panels; ++k) {
    const double lo = u_lo + k * h;
    coarse[k] = gauss(lo, k == panels - 1 ? u_hi : lo + h);
    scale += std::fabs(coarse[k]);
  }
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = u_lo + k * h;
    total += refine(lo, k == panels - 1 ? u_hi : lo + h, coarse[k], 0);
  }
  return total;
}

}  // namespace

void validate(const BangBangProblem& p) {
  const double fields[] = {p.v_i, p.v_f, p.length, p.a_plus, p.a_minus, p.drag.c0, p.drag.c1};
  for (double x : fields) {
    if (!std::isfinite(x)) throw InvalidInputError("problem: non-finite data");
  }
  if (p.v_i < 0.0 || p.v_f < 0.0) throw InvalidInputError("problem: speeds must be >= 0");
  if (p.length <= 0.0) throw InvalidInputError("problem: length must be > 0");
  if (p.a_plus <= 0.0 || p.a_minus <= 0.0) {
    throw InvalidInputError("problem: control bounds must be > 0");
  }
  if (p.drag.c0 < 0.0 || p.drag.c1 < 0.0) {
    throw InvalidInputError("problem: drag coefficients must be >= 0");
  }
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kFeasible: return "Feasible";
    case Verdict::kInfeasibleTooFast: return "InfeasibleTooFast";
    case Verdict::kInfeasibleTooSlow: return "InfeasibleTooSlow";
  }
  return "Unknown";
}

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::kAccel: return "accel";
    case Phase::kBrake: return "brake";
    case Phase::kEnvelopeAccel: return "envelope_accel";
    case Phase::kEnvelopeBrake: return "envelope_brake";
  }
  return "unknown";
}

Feasibility feasibility(const BangBangProblem& p) {
  validate(p);
  Feasibility out;
  out.vf_max = velocity_at_space(accel_arc(p), p.length);
  const Arc braking({-p.a_minus, p.v_i, p.drag});
  out.vf_min = braking.domain().s_max < p.length ? 0.0 : velocity_at_space(braking, p.length);
  if (p.v_f > out.vf_max * (1.0 + kFeasibilitySlack) + kFeasibilitySlack) {
    out.verdict = Verdict::kInfeasibleTooFast;
  } else if (p.v_f < out.vf_min * (1.0 - kFeasibilitySlack) - kFeasibilitySlack) {
    out.verdict = Verdict::kInfeasibleTooSlow;
  } else {
    out.verdict = Verdict::kFeasible;
  }
  return out;
}

BangBangSolution solve(const BangBangProblem& p) {
  const Feasibility feas = feasibility(p);
  if (feas.verdict != Verdict::kFeasible) {
    throw InfeasibleProblemError("solve: problem is " + std::string(verdict_name(feas.verdict)));
  }
  BangBangSolution sol{p, 0.0, 0.0, 0.0, 0.0, accel_arc(p), brake_arc(p), false, 0};
  const double length = p.length;

  SwitchFunction g(sol.left, sol.right, length);
  const double g_end = feas.vf_max - p.v_f;
  const double v_start_brake = velocity_at_space(sol.right, -length);
  const double g_start = p.v_i - v_start_brake;
  // The accelerating speed stays between v_i and vf_max, so this bounds the
  // speed at any crossing. The braking speed at s = 0 may be huge and only
  // sets the scale of its own end test.
  const double g_tol = 1e-12 * (1.0 + std::max({feas.vf_max, p.v_i, p.v_f}));

  double s_sigma;
  if (g_end <= g_tol) {
    s_sigma = length;
  } else if (g_start >= -1e-12 * (1.0 + std::max(p.v_i, v_start_brake))) {
    s_sigma = 0.0;
  } else {
    double lo = 0.0;
    double hi = length;
    double s = length / 2.0;
    bool done = false;
    for (int iter = 1; iter <= kMaxSwitchIterations; ++iter) {
      sol.iterations = iter;
      const SwitchFunction::Value val = g(s);
      if (std::fabs(val.g) <= g_tol || hi - lo <= 4.0 * kEps * length) {
        done = true;
        break;
      }
      if (val.g < 0.0) {
        lo = s;
      } else {
        hi = s;
      }
      double next = s - val.g / val.dg;
      if (!std::isfinite(next) || next <= lo || next >= hi) next = lo + (hi - lo) / 2.0;
      s = next;
    }
    if (!done) throw ConvergenceError("solve: switching point iteration did not converge");
    s_sigma = s;
  }

  sol.s_sigma = s_sigma;
  sol.t_sigma = time_at_space(sol.left, s_sigma).t;
  sol.tau_sigma = time_at_space(sol.right, s_sigma - length).t;
  sol.total_time = sol.t_sigma - sol.tau_sigma;
  sol.degenerate = s_sigma <= kDegenerateFraction * length ||
                   s_sigma >= (1.0 - kDegenerateFraction) * length;
  return sol;
}

double speed_at(const BangBangSolution& sol, double s) {
  if (s < sol.s_sigma) return velocity_at_space(sol.left, s);
  return velocity_at_space(sol.right, s - sol.problem.length);
}

std::vector<TrajectorySample> sample_trajectory(const BangBangSolution& sol, int n) {
  if (n < 2) throw InvalidInputError("sample_trajectory: need at least 2 samples");
  const BangBangProblem& p = sol.problem;
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(n));
  double t_left = 0.0;
  double t_right = sol.tau_sigma;
  for (int i = 0; i < n; ++i) {
    const double s = i == n - 1 ? p.length : p.length * i / (n - 1);
    TrajectorySample row;
    row.s = s;
    if (s < sol.s_sigma) {
      t_left = time_at_space_from(sol.left, s, t_left).t;
      row.t = t_left;
      row.v = sol.left.velocity(t_left);
      row.a = p.a_plus;
      row.phase = Phase::kAccel;
    } else {
      t_right = time_at_space_from(sol.right, s - p.length, t_right).t;
      row.t = sol.total_time + t_right;
      row.v = sol.right.velocity(t_right);
      row.a = -p.a_minus;
      row.phase = Phase::kBrake;
    }
    out.push_back(row);
  }
  return out;
}

std::vector<TrajectorySample> sample_envelopes(const BangBangProblem& p, int n) {
  validate(p);
  if (n < 2) throw InvalidInputError("sample_envelopes: need at least 2 samples");
  const Arc left = accel_arc(p);
  const Arc right = brake_arc(p);
  std::vector<TrajectorySample> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  double t_warm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = i == n - 1 ? p.length : p.length * i / (n - 1);
    t_warm = time_at_space_from(left, s, t_warm).t;
    out.push_back({s, t_warm, left.velocity(t_warm), p.a_plus, Phase::kEnvelopeAccel});
  }
  const double tau_start = time_at_space(right, -p.length).t;
  t_warm = tau_start;
  for (int i = 0; i < n; ++i) {
    const double s = i == n - 1 ? p.length : p.length * i / (n - 1);
    t_warm = time_at_space_from(right, s - p.length, t_warm).t;
    out.push_back(
        {s, t_warm - tau_start, right.velocity(t_warm), -p.a_minus, Phase::kEnvelopeBrake});
  }
  return out;
}

double total_time_quadrature(const BangBangSolution& sol, int n) {
  if (n < 1) throw InvalidInputError("total_time_quadrature: need at least one panel");
  const BangBangProblem& p = sol.problem;
  const double nan = std::nan("");
  const ArcDomain& dl = sol.left.domain();
  const ArcDomain& dr = sol.right.domain();
  const double accel = phase_time(sol.left, 0.0, sol.s_sigma, dl.t_min_closed ? dl.s_min : nan, n);
  const double brake = phase_time(sol.right, sol.s_sigma - p.length, 0.0,
                                  std::isfinite(dr.s_max) ? dr.s_max : nan, n);
  return accel + brake;
}

TimeDomainResiduals time_domain_residuals(const BangBangSolution& sol) {
  const double tau = sol.t_sigma - sol.total_time;
  return {sol.left.velocity(sol.t_sigma) - sol.right.velocity(tau),
          sol.left.space(sol.t_sigma) - (sol.problem.length + sol.right.space(tau))};
}

}  // namespace bangbang
