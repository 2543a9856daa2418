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

#ifndef EVINET_EVIDENTIAL_HEADS_H_
#define EVINET_EVIDENTIAL_HEADS_H_

#include <optional>
#include <string>
#include <vector>

#include "evinet/beta_reasoning/beta_embedding.h"
#include "evinet/numerics/autodiff.h"
#include "evinet/numerics/random.h"
#include "evinet/numerics/sparse_matrix.h"

namespace evinet::evidential {

using numerics::DenseMatrix;
using numerics::Parameter;
using numerics::Real;
using numerics::Rng;
using numerics::SparseMatrix;
using numerics::Tape;
using numerics::Var;

inline constexpr Real kPriorWeightFloor = 1e-6;

// Model switches for the ablation variants.
struct Ablation {
  // Beta embeddings and class regions feed the heads. When off, the heads
  // read the raw node features.
  bool use_dissonance_reasoning = true;
  // Learned per-node prior weight from the novel-class head; when off,
  // W_i = K for every node.
  bool use_vacuity_reasoning = true;
  // Graph propagation inside the heads; when off the heads are MLPs.
  bool use_context = true;

  // Throws std::invalid_argument for vacuity reasoning without dissonance
  // reasoning (the novel region is derived from the known regions).
  void Validate() const;
  friend bool operator==(const Ablation&, const Ablation&) = default;
};

// Two-layer head: in -> H -> 1. The first-layer weight is split into the
// node part and the broadcast class part of the context rows
// [alpha_i | beta_i | alpha_C | beta_C].
struct HeadParams {
  Parameter w1_node;   // node_dim x H
  Parameter w1_class;  // 2d x H, empty without class context
  Parameter b1;        // 1 x H
  Parameter w2;        // H x 1
  Parameter b2;        // 1 x 1

  static HeadParams Init(const std::string& prefix, std::size_t node_dim,
                         std::size_t class_dim, std::size_t hidden, Rng& rng);
  bool has_class_context() const { return !w1_class.value.empty(); }
  std::vector<Parameter*> Parameters();
};

struct EvidenceHeadParams {
  std::vector<HeadParams> class_heads;
  std::optional<HeadParams> novel_head;

  // node_dim is 2d with dissonance reasoning and F without.
  static EvidenceHeadParams Init(std::size_t num_known, std::size_t node_dim,
                                 std::size_t hidden, const Ablation& ablation,
                                 Rng& rng);
  std::size_t num_known() const { return class_heads.size(); }
  std::vector<Parameter*> Parameters();
};

// Row i = [alpha_i | beta_i | alpha_C | beta_C].
DenseMatrix ContextFeatures(const DenseMatrix& node_embeddings,
                            const beta::BetaEmbedding& cls);

// Constants shared by all heads during one phase-2 round.
struct HeadInputs {
  // Propagation operator; null means identity (MLP heads). Must outlive any
  // tape built from these inputs.
  const SparseMatrix* adj = nullptr;
  DenseMatrix node_part;      // adj * N (or N, or the raw features)
  DenseMatrix ones_part;      // adj * 1, n x 1
  std::vector<DenseMatrix> class_rows;  // 1 x 2d per known class
  DenseMatrix novel_row;                // 1 x 2d

  std::size_t num_nodes() const { return node_part.rows(); }
};

// node_rows: n x 2d embeddings, or the raw features when dissonance
// reasoning is off (then class rows are ignored).
HeadInputs MakeHeadInputs(const SparseMatrix& adj, const DenseMatrix& node_rows,
                          const std::vector<beta::BetaEmbedding>& classes,
                          const beta::BetaEmbedding* novel,
                          const Ablation& ablation);

struct EvidenceVars {
  Var evidence;      // n x K
  Var prior_weight;  // n x 1
};

struct ForwardOptions {
  bool training = false;
  Real dropout = 0.0;
  Rng* rng = nullptr;
};

EvidenceVars EvidenceForward(Tape& tape, const HeadInputs& inputs,
                             EvidenceHeadParams& params,
                             const ForwardOptions& options = {});

struct NodeOpinionBatch {
  DenseMatrix evidence;      // n x K
  DenseMatrix prior_weight;  // n x 1
};

NodeOpinionBatch EvidenceInference(const HeadInputs& inputs,
                                   EvidenceHeadParams& params);

}  // namespace evinet::evidential

#endif  // EVINET_EVIDENTIAL_HEADS_H_
