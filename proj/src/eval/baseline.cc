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

#include "evinet/eval/baseline.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evinet/numerics/adam.h"
#include "evinet/numerics/autodiff.h"
#include "evinet/numerics/random.h"

namespace evinet::eval {

namespace nad = numerics::ad;
using numerics::Parameter;
using numerics::Tape;
using numerics::Var;

DenseMatrix TrainBaselineGcn(const graph::Graph& g,
                             const graph::NormalizedAdjacency& norm,
                             const graph::SplitSpec& split,
                             const BaselineOptions& o) {
  const std::size_t k = split.num_known();
  if (split.train.empty()) throw std::invalid_argument("baseline: empty training set");
  numerics::Rng rng(o.seed);
  numerics::Rng init = rng.Fork(1), drop = rng.Fork(2);
  Parameter w1("baseline.w1", numerics::GlorotUniform(g.feature_dim(), o.hidden_dim, init));
  Parameter b1("baseline.b1", DenseMatrix(1, o.hidden_dim, 0.0));
  Parameter w2("baseline.w2", numerics::GlorotUniform(o.hidden_dim, k, init));
  Parameter b2("baseline.b2", DenseMatrix(1, k, 0.0));
  const std::vector<Parameter*> params = {&w1, &b1, &w2, &b2};
  const DenseMatrix propagated = numerics::SpMM(norm.matrix, g.features);

  std::vector<std::size_t> labels;
  for (std::size_t i : split.train) labels.push_back(*split.KnownIndex(g.labels[i]));

  auto forward = [&](Tape& tape, bool training) {
    Var h = nad::Relu(nad::AddRowVector(
        nad::MatMul(tape.Constant(propagated), tape.Leaf(w1)), tape.Leaf(b1)));
    h = nad::Dropout(h, o.dropout, drop, training);
    return nad::AddRowVector(nad::SpMM(norm.matrix, nad::MatMul(h, tape.Leaf(w2))),
                             tape.Leaf(b2));
  };

  numerics::Adam adam({.lr = o.lr, .weight_decay = o.weight_decay});
  numerics::ZeroGrads(params);
  for (std::size_t epoch = 0; epoch < o.epochs; ++epoch) {
    Tape tape;
    Var loss = nad::SoftmaxCrossEntropy(
        nad::GatherRows(forward(tape, true), split.train), labels);
    if (!std::isfinite(loss.value()(0, 0)))
      throw std::runtime_error("baseline GCN diverged at epoch " + std::to_string(epoch));
    tape.Backward(loss);
    adam.Step(params);
  }
  Tape tape;
  return forward(tape, false).value();
}

BaselineScores ScoreLogits(const DenseMatrix& logits) {
  BaselineScores s;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    const auto best = std::max_element(row.begin(), row.end());
    const Real m = *best;
    Real sum = 0.0;
    for (Real z : row) sum += std::exp(z - m);
    s.prediction.push_back(static_cast<std::size_t>(best - row.begin()));
    s.max_logit.push_back(-m);
    s.energy.push_back(-(m + std::log(sum)));
  }
  return s;
}

}  // namespace evinet::eval
