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

#include "evinet/beta_reasoning/beta_loss.h"

#include <stdexcept>
#include <string>

#include "evinet/numerics/special_functions.h"

namespace evinet::beta {

namespace nad = numerics::ad;

Var ClassEmbeddingVars::Stacked() const {
  std::vector<Var> parts = classes;
  parts.push_back(novel);
  return nad::ConcatRows(parts);
}

ClassEmbeddings ClassEmbeddings::FromVars(const ClassEmbeddingVars& vars) {
  ClassEmbeddings out;
  for (const Var& c : vars.classes)
    out.classes.push_back(BetaEmbedding::FromRow(c.value().row(0)));
  out.known = BetaEmbedding::FromRow(vars.known.value().row(0));
  out.novel = BetaEmbedding::FromRow(vars.novel.value().row(0));
  return out;
}

ClassEmbeddingVars BuildClassEmbeddings(
    Var nodes, const std::vector<std::vector<std::size_t>>& members,
    DisjunctionParams& params) {
  if (members.empty())
    throw std::invalid_argument("BuildClassEmbeddings: no known classes");
  ClassEmbeddingVars out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k].empty())
      throw std::invalid_argument("known class " + std::to_string(k) +
                                  " has no training nodes");
    out.classes.push_back(
        Disjunction(nad::GatherRows(nodes, members[k]), params));
  }
  out.known = Disjunction(nad::ConcatRows(out.classes), params);
  out.novel = ad::Negation(out.known);
  return out;
}

Var BetaLoss(Var nodes, std::span<const std::size_t> labels,
             const ClassEmbeddingVars& classes, Real gamma) {
  const std::size_t m = nodes.rows(), k = classes.classes.size();
  numerics::RequireShape(labels.size() == m, "BetaLoss: one label per node");
  numerics::RequireShape(m > 0, "BetaLoss: no nodes");
  Tape& tape = *nodes.tape();

  // m x (K + 1); the last column is the novel region.
  Var dist = ad::BetaDistances(nodes, classes.Stacked());
  DenseMatrix weights(m, k + 1, 1.0 / static_cast<Real>(k));
  for (std::size_t i = 0; i < m; ++i) {
    if (labels[i] >= k)
      throw std::invalid_argument("BetaLoss: label " + std::to_string(labels[i]) +
                                  " is not a known class");
    weights(i, labels[i]) = 0.0;
  }
  Var positive =
      nad::LogSigmoid(nad::AddScalar(nad::Scale(nad::PickCols(dist, labels), -1.0), gamma));
  Var negative = nad::Mul(nad::LogSigmoid(nad::AddScalar(dist, -gamma)),
                          tape.Constant(std::move(weights)));
  Var total = nad::Add(nad::Sum(positive), nad::Sum(negative));
  return nad::Scale(total, -1.0 / static_cast<Real>(m));
}

Real BetaLossFromDistances(std::span<const Real> class_distances,
                           Real novel_distance, std::size_t label, Real gamma) {
  const std::size_t k = class_distances.size();
  if (label >= k) throw std::invalid_argument("label is not a known class");
  using numerics::LogSigmoid;
  Real loss = -LogSigmoid(gamma - class_distances[label]);
  for (std::size_t c = 0; c < k; ++c)
    if (c != label) loss -= LogSigmoid(class_distances[c] - gamma) / static_cast<Real>(k);
  loss -= LogSigmoid(novel_distance - gamma) / static_cast<Real>(k);
  return loss;
}

}  // namespace evinet::beta
