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

#ifndef EVINET_BETA_REASONING_BETA_EMBEDDING_H_
#define EVINET_BETA_REASONING_BETA_EMBEDDING_H_

#include <span>
#include <vector>

#include "evinet/numerics/autodiff.h"
#include "evinet/numerics/dense_matrix.h"

namespace evinet::beta {

using numerics::DenseMatrix;
using numerics::Real;
using numerics::Tape;
using numerics::Var;

// d independent Beta distributions. On a tape, a batch of n embeddings is
// an n x 2d matrix laid out as [alpha | beta].
struct BetaEmbedding {
  std::vector<Real> alpha;
  std::vector<Real> beta;

  std::size_t dim() const { return alpha.size(); }
  // Throws std::invalid_argument unless sizes agree and every parameter is
  // finite and > 0.
  void Validate() const;

  static BetaEmbedding FromRow(std::span<const Real> row);
  DenseMatrix ToRow() const;

  friend bool operator==(const BetaEmbedding&, const BetaEmbedding&) = default;
};

// KL(Beta(a_n, b_n) || Beta(a_c, b_c)).
Real BetaKL(Real a_n, Real b_n, Real a_c, Real b_c);

// Sum over dimensions of KL(node_j || class_j).
Real Dist(const BetaEmbedding& node, const BetaEmbedding& cls);

// (alpha, beta) -> (1/alpha, 1/beta).
BetaEmbedding Negation(const BetaEmbedding& e);

namespace ad {

// out(i, t) = Dist(row i of nodes, row t of targets); nodes n x 2d,
// targets T x 2d. Differentiable in both arguments.
Var BetaDistances(Var nodes, Var targets);

// Elementwise reciprocal of a [alpha | beta] batch.
Var Negation(Var e);

}  // namespace ad
}  // namespace evinet::beta

#endif  // EVINET_BETA_REASONING_BETA_EMBEDDING_H_
