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

#ifndef EVINET_BETA_REASONING_ENCODER_H_
#define EVINET_BETA_REASONING_ENCODER_H_

#include <vector>

#include "evinet/numerics/autodiff.h"
#include "evinet/numerics/random.h"
#include "evinet/numerics/sparse_matrix.h"

namespace evinet::beta {

using numerics::DenseMatrix;
using numerics::Parameter;
using numerics::Real;
using numerics::Rng;
using numerics::SparseMatrix;
using numerics::Tape;
using numerics::Var;

// Two GCN layers F -> H -> 2d, each followed by batch normalization and
// softplus. Layer weights carry no bias since batch normalization follows.
struct EncoderParams {
  Parameter w1, bn1_gamma, bn1_beta;
  Parameter w2, bn2_gamma, bn2_beta;
  // Running moments used in inference mode.
  DenseMatrix bn1_mean, bn1_var, bn2_mean, bn2_var;

  static EncoderParams Init(std::size_t feature_dim, std::size_t hidden_dim,
                            std::size_t embedding_dim, Rng& rng);

  std::size_t feature_dim() const { return w1.value.rows(); }
  std::size_t hidden_dim() const { return w1.value.cols(); }
  std::size_t embedding_dim() const { return w2.value.cols() / 2; }
  std::vector<Parameter*> Parameters();
  // Running moments as named tensors, for checkpoints.
  std::vector<std::pair<std::string, DenseMatrix*>> Buffers();
};

struct EncodeOptions {
  bool training = false;
  Real dropout = 0.0;
  Rng* rng = nullptr;  // required when training with dropout > 0
  Real bn_momentum = 0.1;
  Real bn_eps = 1e-5;
  // Training mode only: fold the batch moments into the running moments.
  bool update_running_stats = true;
};

// Returns the n x 2d embedding batch [alpha | beta]. `propagated` is the
// constant product adj * X; `adj` must outlive the tape.
Var Encode(Tape& tape, const SparseMatrix& adj, const DenseMatrix& propagated,
           EncoderParams& params, const EncodeOptions& options);

// Inference-mode forward pass without a caller-visible tape.
DenseMatrix EncodeInference(const SparseMatrix& adj,
                            const DenseMatrix& propagated,
                            EncoderParams& params, Real bn_eps = 1e-5);

}  // namespace evinet::beta

#endif  // EVINET_BETA_REASONING_ENCODER_H_
