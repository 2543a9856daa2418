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

#ifndef EVINET_EVIDENTIAL_DIRICHLET_LOSS_H_
#define EVINET_EVIDENTIAL_DIRICHLET_LOSS_H_

#include <span>

#include "evinet/evidential/heads.h"

namespace evinet::evidential {

// Mean over the selected rows of psi(S_i) - psi(xi_{i,y_i}), where
// xi_ik = e_ik + W_i / K and S_i = sum_k e_ik + W_i.
Var DirichletLoss(Var evidence, Var prior_weight, std::span<const std::size_t> rows,
                  std::span<const std::size_t> labels);

Real DirichletLossValue(const NodeOpinionBatch& batch,
                        std::span<const std::size_t> rows,
                        std::span<const std::size_t> labels);

}  // namespace evinet::evidential

#endif  // EVINET_EVIDENTIAL_DIRICHLET_LOSS_H_
