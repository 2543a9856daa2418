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

#ifndef EVINET_NUMERICS_GRAD_CHECK_H_
#define EVINET_NUMERICS_GRAD_CHECK_H_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evinet/numerics/autodiff.h"

namespace evinet::numerics {

struct GradCheckReport {
  std::string parameter;
  DenseMatrix analytic;
  DenseMatrix numeric;
  // max over entries of |a - n| / max(1, |a|, |n|)
  Real max_relative_error = 0.0;
};

class NonFiniteLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds the loss on a fresh tape from the current parameter values. Must
// be a pure function of those values (fixed dropout masks, fixed data).
using LossBuilder = std::function<Var(Tape&)>;

Real RelativeError(Real analytic, Real numeric);

// Compares the tape gradient of `build` against central differences for
// every scalar entry of every parameter. `epsilon` must lie in [1e-7, 1e-3].
// Parameter values are restored before returning.
std::vector<GradCheckReport> GradCheck(const LossBuilder& build,
                                       const std::vector<Parameter*>& params,
                                       Real epsilon = 1e-6);

// Largest max_relative_error across reports.
Real MaxRelativeError(const std::vector<GradCheckReport>& reports);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_GRAD_CHECK_H_
