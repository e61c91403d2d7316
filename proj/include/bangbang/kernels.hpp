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

// Scalar special functions used by the closed-form Riccati arcs.
//
// Every function here has a removable singularity at a zero rate argument
// (w = 0, c = 0). Each one switches from its closed form to a convergent
// Taylor series when the product of its arguments falls below
// KernelConfig::series_switch_threshold, so the limit values are reproduced
// exactly and the neighbourhood of the singularity does not lose digits.
//
//   log_ratio(t, c)          = log(1 - c t) / c
//   exp_ratio(t, w)          = (1 - exp(w t)) / w
//   sin_ratio(x, w)          = sin(w x) / w
//   atan_ratio(x, w)         = atan(w x) / w
//   exp_pair(t, w, c0)       = [exp_ratio(-t, (w+c0)/2) + exp_ratio(t, (w-c0)/2)] / w
//   scaled_exp_pair(t,w,c0)  = exp(t c0 / 2) exp_pair(t, w, c0)
//   log_trig_remainder(tau, c)
//       = log((c/s) sin(tau s) + cos(tau s)) / tau^2 - c / tau,  s = sqrt(1-c^2)

#pragma once

#include <vector>

namespace bangbang::kernels {

struct KernelConfig {
  // Argument magnitude below which the series branch is taken.
  double series_switch_threshold = 1e-2;
  // Series stop once |term| <= series_rel_tol * |partial sum|.
  double series_rel_tol = 0x1p-53;
  int max_terms = 64;
};

// Throws InvalidInputError when the config violates its invariants.
void validate(const KernelConfig& config);

// The log_trig_remainder polynomial is used for |tau| at or below this value.
inline constexpr double kTrigRemainderSeriesLimit = 1e-3;

// log(1 - c t) / c. Throws DomainError when c t >= 1.
[[nodiscard]] double log_ratio(double t, double c, const KernelConfig& config = {});

// (1 - e^{w t}) / w. Throws OverflowError when e^{w t} is not representable.
[[nodiscard]] double exp_ratio(double t, double w, const KernelConfig& config = {});

// sin(w x) / w, i.e. x sinc(w x).
[[nodiscard]] double sin_ratio(double x, double w, const KernelConfig& config = {});

// atan(w x) / w.
[[nodiscard]] double atan_ratio(double x, double w, const KernelConfig& config = {});

// The divided difference of u -> (1 - e^{-u t}) / u over the nodes
// (w + c0)/2 and (c0 - w)/2, equal to -int_0^t u e^{-c0 u/2} sinh(w u/2)/(w u/2) du.
// Throws OverflowError for extreme t.
[[nodiscard]] double exp_pair(double t, double w, double c0, const KernelConfig& config = {});

// e^{t c0/2} exp_pair(t, w, c0).
[[nodiscard]] double scaled_exp_pair(double t, double w, double c0, const KernelConfig& config = {});

// Requires |c| <= 1. Degree-5 polynomial for |tau| <= 1e-3, the direct
// logarithmic form otherwise. Throws DomainError when the log argument is
// nonpositive.
[[nodiscard]] double log_trig_remainder(double tau, double c);

// Branch-pinned evaluations, for tests and for callers that already know
// which regime they are in.
namespace series {
[[nodiscard]] double log_ratio(double t, double c, const KernelConfig& config = {});
[[nodiscard]] double exp_ratio(double t, double w, const KernelConfig& config = {});
[[nodiscard]] double sin_ratio(double x, double w, const KernelConfig& config = {});
[[nodiscard]] double atan_ratio(double x, double w, const KernelConfig& config = {});
[[nodiscard]] double exp_pair(double t, double w, double c0, const KernelConfig& config = {});
[[nodiscard]] double log_trig_remainder(double tau, double c);

// Number of terms the last series call on this thread summed.
[[nodiscard]] int last_term_count();

// When enabled, each series call on this thread records |term| for every
// term it sums; last_terms() returns the record of the most recent call.
void record_terms(bool enabled);
[[nodiscard]] const std::vector<double>& last_terms();
}  // namespace series

namespace closed {
[[nodiscard]] double log_ratio(double t, double c);
[[nodiscard]] double exp_ratio(double t, double w);
[[nodiscard]] double sin_ratio(double x, double w);
[[nodiscard]] double atan_ratio(double x, double w);
[[nodiscard]] double exp_pair(double t, double w, double c0);
[[nodiscard]] double log_trig_remainder(double tau, double c);
}  // namespace closed

// log(1 + x) - x without cancellation for small |x|. Requires x > -1.
[[nodiscard]] double log1p_minus(double x);

}  // namespace bangbang::kernels
