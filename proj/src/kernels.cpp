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

#include "bangbang/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bangbang/errors.hpp"

namespace bangbang::kernels {

namespace {

thread_local int tls_term_count = 0;
thread_local bool tls_record = false;
thread_local std::vector<double> tls_terms;

void begin_series() {
  tls_term_count = 0;
  if (tls_record) tls_terms.clear();
}

void note_term(double term) {
  ++tls_term_count;
  if (tls_record) tls_terms.push_back(std::fabs(term));
}

bool converged(double term, double sum, const KernelConfig& config) {
  return std::fabs(term) <= config.series_rel_tol * std::fabs(sum);
}

double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw OverflowError(std::string(what) + ": result not representable");
  }
  return value;
}

// sum_{n>=0} x^n / (n+1)
double log_series_sum(double x, const KernelConfig& config) {
  begin_series();
  double power = 1.0;
  double sum = 0.0;
  for (int n = 0; n < config.max_terms; ++n) {
    const double term = power / (n + 1);
    sum += term;
    note_term(term);
    if (converged(term, sum, config)) break;
    power *= x;
  }
  return sum;
}

// sum_{n>=0} x^n / (n+1)!
double exp_series_sum(double x, const KernelConfig& config) {
  begin_series();
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < config.max_terms; ++n) {
    sum += term;
    note_term(term);
    if (converged(term, sum, config)) break;
    term *= x / (n + 2);
  }
  return sum;
}

}  // namespace

void validate(const KernelConfig& config) {
  if (!(config.series_switch_threshold > 0.0 && config.series_switch_threshold < 1.0)) {
    throw InvalidInputError("KernelConfig: series_switch_threshold must lie in (0, 1)");
  }
  const double floor = std::numeric_limits<double>::epsilon() * 1e3;
  if (!(config.series_rel_tol > 0.0 && config.series_rel_tol <= floor)) {
    throw InvalidInputError("KernelConfig: series_rel_tol must lie in (0, 1e3 eps]");
  }
  if (config.max_terms < 8) {
    throw InvalidInputError("KernelConfig: max_terms must be at least 8");
  }
}

// ---------------------------------------------------------------------------
// Series branches.

namespace series {

int last_term_count() { return tls_term_count; }

void record_terms(bool enabled) {
  tls_record = enabled;
  tls_terms.clear();
}

const std::vector<double>& last_terms() { return tls_terms; }

double log_ratio(double t, double c, const KernelConfig& config) {
  return -t * log_series_sum(c * t, config);
}

double exp_ratio(double t, double w, const KernelConfig& config) {
  return -t * exp_series_sum(w * t, config);
}

double sin_ratio(double x, double w, const KernelConfig& config) {
  const double z2 = -(w * x) * (w * x);
  begin_series();
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < config.max_terms; ++n) {
    sum += term;
    note_term(term);
    if (converged(term, sum, config)) break;
    term *= z2 / ((2 * n + 2) * (2 * n + 3));
  }
  return x * sum;
}

double atan_ratio(double x, double w, const KernelConfig& config) {
  const double z2 = -(w * x) * (w * x);
  begin_series();
  double power = 1.0;
  double sum = 0.0;
  for (int n = 0; n < config.max_terms; ++n) {
    const double term = power / (2 * n + 1);
    sum += term;
    note_term(term);
    if (converged(term, sum, config)) break;
    power *= z2;
  }
  return x * sum;
}

// -sum_{n>=1} f_n e^{h_n(t)} [4 + 2 c0 t / (2n+1)] with
//   h_n(t) = sum_{j=1}^{2n} log(|t| / (2j)) - t c0 / 2,
//   f_1 = g_1 = 1,  g_{n+1} = g_n c0^2,  f_{n+1} = f_n w^2 + g_{n+1}.
// The exponent is accumulated in log space so t^{2n} and (2n)! never
// appear separately.
double exp_pair(double t, double w, double c0, const KernelConfig& config) {
  begin_series();
  if (t == 0.0) return 0.0;
  const double log_half_t = std::log(std::fabs(t) / 2.0);
  const double w2 = w * w;
  const double c02 = c0 * c0;
  double h = -t * c0 / 2.0;
  double f = 1.0;
  double g = 1.0;
  double sum = 0.0;
  for (int n = 1; n <= config.max_terms; ++n) {
    h += 2.0 * log_half_t - std::log(2.0 * n - 1.0) - std::log(2.0 * n);
    const double term = f * std::exp(h) * (4.0 + 2.0 * c0 * t / (2 * n + 1));
    sum += term;
    note_term(term);
    if (converged(term, sum, config)) break;
    g *= c02;
    f = f * w2 + g;
  }
  return checked(-sum, "exp_pair");
}

double log_trig_remainder(double tau, double c) {
  const double c2 = c * c;
  const double c4 = c2 * c2;
  const double p5 = (2.0 * c4 + 26.0 * c2 + 17.0) * c / 315.0;
  const double p4 = -(2.0 * c4 + 11.0 * c2 + 2.0) / 90.0;
  const double p3 = (c2 + 2.0) * c / 15.0;
  const double p2 = -(2.0 * c2 + 1.0) / 12.0;
  const double p1 = c / 3.0;
  const double p0 = -0.5;
  return p0 + tau * (p1 + tau * (p2 + tau * (p3 + tau * (p4 + tau * p5))));
}

}  // namespace series

// ---------------------------------------------------------------------------
// Closed forms.

namespace closed {

double log_ratio(double t, double c) {
  if (c == 0.0) return -t;
  if (c * t >= 1.0) {
    throw DomainError("log_ratio: c*t >= 1 (logarithm of a nonpositive number)");
  }
  return std::log1p(-c * t) / c;
}

double exp_ratio(double t, double w) {
  if (w == 0.0) return -t;
  return checked(-std::expm1(w * t) / w, "exp_ratio");
}

double sin_ratio(double x, double w) {
  if (w == 0.0) return x;
  return std::sin(w * x) / w;
}

double atan_ratio(double x, double w) {
  if (w == 0.0) return x;
  return std::atan(w * x) / w;
}

double exp_pair(double t, double w, double c0) {
  if (w == 0.0) throw DomainError("exp_pair: closed form undefined at w = 0");
  const double alpha = (w + c0) / 2.0;
  const double beta = (w - c0) / 2.0;
  return checked((closed::exp_ratio(-t, alpha) + closed::exp_ratio(t, beta)) / w, "exp_pair");
}

double log_trig_remainder(double tau, double c) {
  if (tau == 0.0) return -0.5;
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  const double z = tau * s;
  // sinc(z) - 1
  double sinc_m1;
  if (std::fabs(z) < 0.5) {
    const double z2 = -z * z;
    double term = z2 / 6.0;
    sinc_m1 = 0.0;
    for (int n = 1; n < 32; ++n) {
      sinc_m1 += term;
      if (std::fabs(term) <= 0x1p-60 * std::fabs(sinc_m1)) break;
      term *= z2 / ((2 * n + 2) * (2 * n + 3));
    }
  } else {
    sinc_m1 = std::sin(z) / z - 1.0;
  }
  const double half_sin = std::sin(z / 2.0);
  // x = (c/s) sin(tau s) + cos(tau s) - 1, split as c tau + rest.
  const double rest = c * tau * sinc_m1 - 2.0 * half_sin * half_sin;
  const double x = c * tau + rest;
  if (!(x > -1.0)) {
    throw DomainError("log_trig_remainder: logarithm argument is nonpositive");
  }
  return (rest + log1p_minus(x)) / (tau * tau);
}

}  // namespace closed

// ---------------------------------------------------------------------------
// Auto-switching entry points.

double log_ratio(double t, double c, const KernelConfig& config) {
  if (c * t >= 1.0) {
    throw DomainError("log_ratio: c*t >= 1 (logarithm of a nonpositive number)");
  }
  if (std::fabs(c * t) < config.series_switch_threshold) return series::log_ratio(t, c, config);
  return closed::log_ratio(t, c);
}

double exp_ratio(double t, double w, const KernelConfig& config) {
  if (std::fabs(w * t) < config.series_switch_threshold) return series::exp_ratio(t, w, config);
  return closed::exp_ratio(t, w);
}

double sin_ratio(double x, double w, const KernelConfig& config) {
  if (std::fabs(w * x) < config.series_switch_threshold) return series::sin_ratio(x, w, config);
  return closed::sin_ratio(x, w);
}

double atan_ratio(double x, double w, const KernelConfig& config) {
  if (std::fabs(w * x) < config.series_switch_threshold) return series::atan_ratio(x, w, config);
  return closed::atan_ratio(x, w);
}

double exp_pair(double t, double w, double c0, const KernelConfig& config) {
  if (t == 0.0) return 0.0;
  // The closed form divides a difference of two O(t) quantities by w; it
  // loses about log10(1/(w|t|)) digits, so small w|t| goes to the series.
  if (std::fabs(w * t) <= config.series_switch_threshold) return series::exp_pair(t, w, c0, config);
  return closed::exp_pair(t, w, c0);
}

double scaled_exp_pair(double t, double w, double c0, const KernelConfig& config) {
  return checked(std::exp(t * c0 / 2.0) * exp_pair(t, w, c0, config), "scaled_exp_pair");
}

double log_trig_remainder(double tau, double c) {
  if (!(std::fabs(c) <= 1.0 + 1e-12)) {
    throw DomainError("log_trig_remainder: |c| must not exceed 1");
  }
  c = std::fmin(1.0, std::fmax(-1.0, c));
  if (std::fabs(tau) <= kTrigRemainderSeriesLimit) return series::log_trig_remainder(tau, c);
  return closed::log_trig_remainder(tau, c);
}

double log1p_minus(double x) {
  if (!(x > -1.0)) throw DomainError("log1p_minus: requires x > -1");
  if (std::fabs(x) >= 0.5) return std::log1p(x) - x;
  // log1p(x) = 2 atanh(y), y = x / (2 + x); 2y - x = -x^2 / (2 + x).
  const double y = x / (2.0 + x);
  const double y2 = y * y;
  double power = y * y2;
  double tail = 0.0;
  for (int k = 1; k < 40; ++k) {
    const double term = power / (2 * k + 1);
    tail += term;
    if (std::fabs(term) <= 0x1p-60 * std::fabs(tail)) break;
    power *= y2;
  }
  return -x * x / (2.0 + x) + 2.0 * tail;
}

}  // namespace bangbang::kernels
