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

#include "evinet/numerics/summation.h"

#include <cmath>
#include <utility>
#include <vector>

namespace evinet::numerics {

Real ExactSum(std::span<const Real> values) {
  std::vector<Real> partials;
  for (Real x : values) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < partials.size(); ++j) {
      Real y = partials[j];
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const Real hi = x + y;
      const Real lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  if (partials.empty()) return 0.0;

  std::size_t n = partials.size();
  Real hi = partials[--n];
  Real lo = 0.0;
  while (n > 0) {
    const Real x = hi;
    const Real y = partials[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) ||
                (lo > 0.0 && partials[n - 1] > 0.0))) {
    const Real y = lo * 2.0;
    const Real x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

}  // namespace evinet::numerics
