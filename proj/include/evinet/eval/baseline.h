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

#ifndef EVINET_EVAL_BASELINE_H_
#define EVINET_EVAL_BASELINE_H_

#include <cstdint>
#include <vector>

#include "evinet/graph/graph.h"
#include "evinet/graph/normalize.h"
#include "evinet/graph/split.h"

namespace evinet::eval {

using numerics::DenseMatrix;
using numerics::Real;

struct BaselineOptions {
  std::size_t hidden_dim = 64;
  std::size_t epochs = 200;
  Real lr = 0.01;
  Real dropout = 0.5;
  Real weight_decay = 5e-4;
  std::uint64_t seed = 0;
};

// Plain two-layer GCN trained with cross-entropy on the known classes of
// the training nodes. Returns n x K logits (K = known classes).
DenseMatrix TrainBaselineGcn(const graph::Graph& g,
                             const graph::NormalizedAdjacency& norm,
                             const graph::SplitSpec& split,
                             const BaselineOptions& options);

// Post-hoc scores oriented so that higher means more anomalous.
struct BaselineScores {
  std::vector<std::size_t> prediction;
  std::vector<Real> max_logit;  // -max_k z_k
  std::vector<Real> energy;     // -log sum_k exp(z_k)
};

BaselineScores ScoreLogits(const DenseMatrix& logits);

}  // namespace evinet::eval

#endif  // EVINET_EVAL_BASELINE_H_
