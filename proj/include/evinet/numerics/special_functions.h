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

#ifndef EVINET_NUMERICS_SPECIAL_FUNCTIONS_H_
#define EVINET_NUMERICS_SPECIAL_FUNCTIONS_H_

#include "evinet/numerics/dense_matrix.h"

namespace evinet::numerics {

// ln(1 + e^x), stable for large |x|.
Real Softplus(Real x);
DenseMatrix Softplus(const DenseMatrix& x);

// Logistic function; also the derivative of Softplus.
Real Sigmoid(Real x);

// ln(sigmoid(x)) = -softplus(-x).
Real LogSigmoid(Real x);

// Digamma function for x > 0. Shifts x upward with psi(x) = psi(x+1) - 1/x
// until x >= 10, then evaluates the asymptotic series. Throws
// std::domain_error for x <= 0 or NaN.
Real Digamma(Real x);

// Derivative of Digamma, same shift + series scheme.
Real Trigamma(Real x);

// ln B(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b). Throws
// std::domain_error for nonpositive arguments.
Real LogBeta(Real a, Real b);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_SPECIAL_FUNCTIONS_H_
