/*
 * Copyright 2026 The EviNet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Test-only reference: Beta KL by direct numerical integration.

#ifndef EVINET_TESTS_SUPPORT_KL_ORACLE_H_
#define EVINET_TESTS_SUPPORT_KL_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <numbers>

namespace evinet::testing {

inline double StableSoftplus(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

// Integrates p(x) ln(p(x)/q(x)) over (0, 1) with tanh-sinh substitution
// x = logistic(pi sinh t), which tames the endpoint singularities of Beta
// densities with parameters below 1.
inline double QuadratureBetaKL(double a_n, double b_n, double a_c, double b_c) {
  const double log_norm_n = std::lgamma(a_n + b_n) - std::lgamma(a_n) - std::lgamma(b_n);
  const double log_norm_c = std::lgamma(a_c + b_c) - std::lgamma(a_c) - std::lgamma(b_c);
  const double h = 1.0 / 128.0;
  double sum = 0.0;
  for (int k = -6 * 128; k <= 6 * 128; ++k) {
    const double t = k * h;
    const double u = std::numbers::pi * std::sinh(t);
    const double log_x = -StableSoftplus(-u);
    const double log_1mx = -StableSoftplus(u);
    const double lp = (a_n - 1) * log_x + (b_n - 1) * log_1mx + log_norm_n;
    const double lq = (a_c - 1) * log_x + (b_c - 1) * log_1mx + log_norm_c;
    const double log_jac = log_x + log_1mx + std::log(std::numbers::pi * std::cosh(t));
    sum += std::exp(lp + log_jac) * (lp - lq);
  }
  return sum * h;
}

}  // namespace evinet::testing

#endif  // EVINET_TESTS_SUPPORT_KL_ORACLE_H_
