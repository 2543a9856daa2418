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

#ifndef EVINET_NUMERICS_ADAM_H_
#define EVINET_NUMERICS_ADAM_H_

#include <vector>

#include "evinet/numerics/autodiff.h"

namespace evinet::numerics {

struct AdamOptions {
  Real lr = 0.01;
  Real beta1 = 0.9;
  Real beta2 = 0.999;
  Real eps = 1e-8;
  // L2 penalty added to the gradient.
  Real weight_decay = 0.0;
};

// Adam with bias correction. Moment buffers are matched to parameters by
// position, so every Step must pass the same parameter list.
class Adam {
 public:
  explicit Adam(AdamOptions options) : options_(options) {}

  // Applies one update from the accumulated gradients, then zeroes them.
  void Step(const std::vector<Parameter*>& params);

  const AdamOptions& options() const { return options_; }
  void set_lr(Real lr) { options_.lr = lr; }
  long steps() const { return t_; }

 private:
  AdamOptions options_;
  std::vector<DenseMatrix> m_, v_;
  long t_ = 0;
};

// Zeroes every gradient in the list.
void ZeroGrads(const std::vector<Parameter*>& params);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_ADAM_H_
