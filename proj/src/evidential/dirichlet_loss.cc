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

#include "evinet/evidential/dirichlet_loss.h"

#include <string>

#include "evinet/numerics/special_functions.h"

namespace evinet::evidential {

namespace nad = numerics::ad;

Var DirichletLoss(Var evidence, Var prior_weight, std::span<const std::size_t> rows,
                  std::span<const std::size_t> labels) {
  numerics::RequireShape(rows.size() == labels.size() && !rows.empty(),
                         "DirichletLoss: need one label per selected row");
  const std::size_t k = evidence.cols();
  for (std::size_t y : labels)
    numerics::RequireShape(y < k, "DirichletLoss: label " + std::to_string(y) +
                                      " out of range");
  Var e = nad::GatherRows(evidence, rows);
  Var w = nad::GatherRows(prior_weight, rows);
  Var strength = nad::Add(nad::RowSum(e), w);
  Var xi = nad::Add(nad::PickCols(e, labels), nad::Scale(w, 1.0 / static_cast<Real>(k)));
  return nad::Mean(nad::Sub(nad::Digamma(strength), nad::Digamma(xi)));
}

Real DirichletLossValue(const NodeOpinionBatch& batch,
                        std::span<const std::size_t> rows,
                        std::span<const std::size_t> labels) {
  Tape tape;
  return DirichletLoss(tape.Constant(batch.evidence), tape.Constant(batch.prior_weight),
                       rows, labels)
      .value()(0, 0);
}

}  // namespace evinet::evidential
