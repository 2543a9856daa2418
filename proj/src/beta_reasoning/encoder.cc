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

#include "evinet/beta_reasoning/encoder.h"

#include <stdexcept>

namespace evinet::beta {

namespace nad = numerics::ad;

EncoderParams EncoderParams::Init(std::size_t feature_dim,
                                  std::size_t hidden_dim,
                                  std::size_t embedding_dim, Rng& rng) {
  if (feature_dim == 0 || hidden_dim == 0 || embedding_dim == 0)
    throw std::invalid_argument("encoder dimensions must be positive");
  const std::size_t out = 2 * embedding_dim;
  EncoderParams p;
  p.w1 = Parameter("encoder.w1", numerics::GlorotUniform(feature_dim, hidden_dim, rng));
  p.bn1_gamma = Parameter("encoder.bn1.gamma", DenseMatrix(1, hidden_dim, 1.0));
  p.bn1_beta = Parameter("encoder.bn1.beta", DenseMatrix(1, hidden_dim, 0.0));
  p.w2 = Parameter("encoder.w2", numerics::GlorotUniform(hidden_dim, out, rng));
  p.bn2_gamma = Parameter("encoder.bn2.gamma", DenseMatrix(1, out, 1.0));
  p.bn2_beta = Parameter("encoder.bn2.beta", DenseMatrix(1, out, 0.0));
  p.bn1_mean = DenseMatrix(1, hidden_dim, 0.0);
  p.bn1_var = DenseMatrix(1, hidden_dim, 1.0);
  p.bn2_mean = DenseMatrix(1, out, 0.0);
  p.bn2_var = DenseMatrix(1, out, 1.0);
  return p;
}

std::vector<Parameter*> EncoderParams::Parameters() {
  return {&w1, &bn1_gamma, &bn1_beta, &w2, &bn2_gamma, &bn2_beta};
}

std::vector<std::pair<std::string, DenseMatrix*>> EncoderParams::Buffers() {
  return {{"encoder.bn1.running_mean", &bn1_mean},
          {"encoder.bn1.running_var", &bn1_var},
          {"encoder.bn2.running_mean", &bn2_mean},
          {"encoder.bn2.running_var", &bn2_var}};
}

namespace {

void FoldRunning(const nad::BatchStats& batch, std::size_t n, Real momentum,
                 DenseMatrix& mean, DenseMatrix& var) {
  const Real unbias = n > 1 ? static_cast<Real>(n) / static_cast<Real>(n - 1) : 1.0;
  for (std::size_t c = 0; c < mean.cols(); ++c) {
    mean(0, c) = (1.0 - momentum) * mean(0, c) + momentum * batch.mean(0, c);
    var(0, c) = (1.0 - momentum) * var(0, c) + momentum * batch.variance(0, c) * unbias;
  }
}

Var Normalize(Tape& tape, Var x, Parameter& gamma, Parameter& beta,
              DenseMatrix& running_mean, DenseMatrix& running_var,
              const EncodeOptions& o) {
  if (!o.training)
    return nad::BatchNormInference(x, tape.Leaf(gamma), tape.Leaf(beta),
                                  running_mean, running_var, o.bn_eps);
  nad::BatchStats stats;
  Var y = nad::BatchNorm(x, tape.Leaf(gamma), tape.Leaf(beta), o.bn_eps, &stats);
  if (o.update_running_stats)
    FoldRunning(stats, x.rows(), o.bn_momentum, running_mean, running_var);
  return y;
}

}  // namespace

Var Encode(Tape& tape, const SparseMatrix& adj, const DenseMatrix& propagated,
           EncoderParams& p, const EncodeOptions& o) {
  numerics::RequireShape(propagated.cols() == p.feature_dim() &&
                             propagated.rows() == adj.rows(),
                         "Encode: features " + propagated.ShapeString() +
                             " do not match the encoder input width " +
                             std::to_string(p.feature_dim()));
  if (o.training && o.dropout > 0.0 && o.rng == nullptr)
    throw std::invalid_argument("Encode: dropout needs an Rng");
  Var x = tape.Constant(propagated);
  Var h = nad::MatMul(x, tape.Leaf(p.w1));
  h = Normalize(tape, h, p.bn1_gamma, p.bn1_beta, p.bn1_mean, p.bn1_var, o);
  h = nad::Softplus(h);
  if (o.training && o.dropout > 0.0) h = nad::Dropout(h, o.dropout, *o.rng, true);
  h = nad::SpMM(adj, nad::MatMul(h, tape.Leaf(p.w2)));
  h = Normalize(tape, h, p.bn2_gamma, p.bn2_beta, p.bn2_mean, p.bn2_var, o);
  return nad::Softplus(h);
}

DenseMatrix EncodeInference(const SparseMatrix& adj, const DenseMatrix& propagated,
                            EncoderParams& params, Real bn_eps) {
  Tape tape;
  EncodeOptions o;
  o.bn_eps = bn_eps;
  return Encode(tape, adj, propagated, params, o).value();
}

}  // namespace evinet::beta
