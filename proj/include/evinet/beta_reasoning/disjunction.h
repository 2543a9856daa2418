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

#ifndef EVINET_BETA_REASONING_DISJUNCTION_H_
#define EVINET_BETA_REASONING_DISJUNCTION_H_

#include <span>
#include <vector>

#include "evinet/beta_reasoning/beta_embedding.h"
#include "evinet/numerics/autodiff.h"
#include "evinet/numerics/random.h"

namespace evinet::beta {

using numerics::Parameter;
using numerics::Rng;

// softplus(h2(mean_i h1([alpha_i | beta_i]) * w + bias)) with
// h1 = relu(linear 2d -> D) and h2 = linear D -> 2d.
struct DisjunctionParams {
  Parameter h1_w, h1_b;
  Parameter w, bias;
  Parameter h2_w, h2_b;

  static DisjunctionParams Init(std::size_t embedding_dim,
                                std::size_t disjunction_dim, Rng& rng);

  std::size_t embedding_dim() const { return h1_w.value.rows() / 2; }
  std::size_t disjunction_dim() const { return h1_w.value.cols(); }
  std::vector<Parameter*> Parameters();
};

// rows: m x 2d batch (m >= 1). Returns 1 x 2d. The mean over rows is
// exactly invariant to row order and to repeating every row equally often.
Var Disjunction(Var rows, DisjunctionParams& params);

// Value-level convenience. Throws std::invalid_argument on an empty list.
BetaEmbedding Disjunction(std::span<const BetaEmbedding> inputs,
                          DisjunctionParams& params);

}  // namespace evinet::beta

#endif  // EVINET_BETA_REASONING_DISJUNCTION_H_
