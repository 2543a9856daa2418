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

#ifndef EVINET_BETA_REASONING_BETA_LOSS_H_
#define EVINET_BETA_REASONING_BETA_LOSS_H_

#include <span>
#include <vector>

#include "evinet/beta_reasoning/beta_embedding.h"
#include "evinet/beta_reasoning/disjunction.h"

namespace evinet::beta {

// Class support regions on a tape; each Var is 1 x 2d.
struct ClassEmbeddingVars {
  std::vector<Var> classes;
  Var known;
  Var novel;

  // (K + 1) x 2d: C_1..C_K followed by C_Nov.
  Var Stacked() const;
};

struct ClassEmbeddings {
  std::vector<BetaEmbedding> classes;
  BetaEmbedding known;
  BetaEmbedding novel;

  static ClassEmbeddings FromVars(const ClassEmbeddingVars& vars);
};

// members[k] lists the rows of `nodes` that are training nodes of known
// class k. C_k = disjunction of those rows, C_Known = disjunction of
// C_1..C_K, C_Nov = negation(C_Known). Throws std::invalid_argument when a
// class has no members.
ClassEmbeddingVars BuildClassEmbeddings(
    Var nodes, const std::vector<std::vector<std::size_t>>& members,
    DisjunctionParams& params);

// Mean over rows of
//   -ln s(gamma - D(N_i, C_y)) - (1/K) sum_{k != y} ln s(D(N_i, C_k) - gamma)
//   - (1/K) ln s(D(N_i, C_Nov) - gamma)
// where s is the logistic function. `nodes` is m x 2d, labels are
// known-class indices.
Var BetaLoss(Var nodes, std::span<const std::size_t> labels,
             const ClassEmbeddingVars& classes, Real gamma);

// Single-node loss from precomputed distances, for reference.
Real BetaLossFromDistances(std::span<const Real> class_distances,
                           Real novel_distance, std::size_t label, Real gamma);

}  // namespace evinet::beta

#endif  // EVINET_BETA_REASONING_BETA_LOSS_H_
