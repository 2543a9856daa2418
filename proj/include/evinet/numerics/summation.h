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

#ifndef EVINET_NUMERICS_SUMMATION_H_
#define EVINET_NUMERICS_SUMMATION_H_

#include <span>

#include "evinet/numerics/dense_matrix.h"

namespace evinet::numerics {

// Correctly rounded sum of the exact real sum of the inputs (Shewchuk
// partials with a final half-way correction). The result does not depend
// on the order of the inputs.
Real ExactSum(std::span<const Real> values);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_SUMMATION_H_
