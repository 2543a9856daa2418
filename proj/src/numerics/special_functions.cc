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

#include "evinet/numerics/special_functions.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evinet::numerics {
namespace {

constexpr Real kAsymptoticThreshold = 10.0;

void RequirePositive(Real x, const char* fn) {
  if (!(x > 0.0))
    throw std::domain_error(std::string(fn) + ": argument must be positive, got " +
                            std::to_string(x));
}

}  // namespace

Real Softplus(Real x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

DenseMatrix Softplus(const DenseMatrix& x) {
  DenseMatrix y(x.rows(), x.cols());
  auto in = x.data();
  auto out = y.data();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = Softplus(in[i]);
  return y;
}

Real Sigmoid(Real x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const Real e = std::exp(x);
  return e / (1.0 + e);
}

Real LogSigmoid(Real x) { return -Softplus(-x); }

Real Digamma(Real x) {
  RequirePositive(x, "Digamma");
  Real shift = 0.0;
  while (x < kAsymptoticThreshold) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Bernoulli-number series: ln x - 1/(2x) - sum B_2k / (2k x^2k).
  const Real inv = 1.0 / x;
  const Real inv2 = inv * inv;
  const Real series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 -
                                                      inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 * inv - series;
}

Real Trigamma(Real x) {
  RequirePositive(x, "Trigamma");
  Real shift = 0.0;
  while (x < kAsymptoticThreshold) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const Real inv = 1.0 / x;
  const Real inv2 = inv * inv;
  // 1/x + 1/(2x^2) + sum B_2k / x^(2k+1).
  const Real series =
      inv * (1.0 +
             inv * (0.5 +
                    inv * (1.0 / 6.0 -
                           inv2 * (1.0 / 30.0 -
                                   inv2 * (1.0 / 42.0 -
                                           inv2 * (1.0 / 30.0 -
                                                   inv2 * (5.0 / 66.0 -
                                                           inv2 * (691.0 / 2730.0 -
                                                                   inv2 * 7.0 / 6.0))))))));
  return shift + series;
}

Real LogBeta(Real a, Real b) {
  RequirePositive(a, "LogBeta");
  RequirePositive(b, "LogBeta");
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace evinet::numerics
