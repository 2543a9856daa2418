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

#include "evinet/beta_reasoning/disjunction.h"

#include <stdexcept>

namespace evinet::beta {

namespace nad = numerics::ad;

DisjunctionParams DisjunctionParams::Init(std::size_t embedding_dim,
                                          std::size_t disjunction_dim,
                                          Rng& rng) {
  if (embedding_dim == 0 || disjunction_dim == 0)
    throw std::invalid_argument("disjunction dimensions must be positive");
  const std::size_t two_d = 2 * embedding_dim;
  DisjunctionParams p;
  p.h1_w = Parameter("disjunction.h1.w",
                     numerics::GlorotUniform(two_d, disjunction_dim, rng));
  p.h1_b = Parameter("disjunction.h1.b", DenseMatrix(1, disjunction_dim, 0.0));
  p.w = Parameter("disjunction.w", DenseMatrix(1, disjunction_dim, 1.0));
  p.bias = Parameter("disjunction.bias", DenseMatrix(1, disjunction_dim, 0.0));
  p.h2_w = Parameter("disjunction.h2.w",
                     numerics::GlorotUniform(disjunction_dim, two_d, rng));
  p.h2_b = Parameter("disjunction.h2.b", DenseMatrix(1, two_d, 0.0));
  return p;
}

std::vector<Parameter*> DisjunctionParams::Parameters() {
  return {&h1_w, &h1_b, &w, &bias, &h2_w, &h2_b};
}

Var Disjunction(Var rows, DisjunctionParams& p) {
  numerics::RequireShape(rows.rows() > 0, "Disjunction: empty input set");
  numerics::RequireShape(rows.cols() == 2 * p.embedding_dim(),
                         "Disjunction: input width " + std::to_string(rows.cols()) +
                             " does not match 2d = " +
                             std::to_string(2 * p.embedding_dim()));
  Tape& tape = *rows.tape();
  Var h = nad::Relu(nad::AddRowVector(nad::MatMul(rows, tape.Leaf(p.h1_w)),
                                    tape.Leaf(p.h1_b)));
  Var pooled = nad::AddRowVector(nad::MulRowVector(nad::MeanRows(h), tape.Leaf(p.w)),
                                tape.Leaf(p.bias));
  return nad::Softplus(
      nad::AddRowVector(nad::MatMul(pooled, tape.Leaf(p.h2_w)), tape.Leaf(p.h2_b)));
}

BetaEmbedding Disjunction(std::span<const BetaEmbedding> inputs,
                          DisjunctionParams& params) {
  if (inputs.empty()) throw std::invalid_argument("Disjunction: empty input set");
  const std::size_t d = inputs.front().dim();
  DenseMatrix rows(inputs.size(), 2 * d);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].dim() != d)
      throw std::invalid_argument("Disjunction: inputs differ in dimension");
    const DenseMatrix r = inputs[i].ToRow();
    for (std::size_t c = 0; c < 2 * d; ++c) rows(i, c) = r(0, c);
  }
  Tape tape;
  const Var out = Disjunction(tape.Constant(std::move(rows)), params);
  return BetaEmbedding::FromRow(out.value().row(0));
}

}  // namespace evinet::beta
