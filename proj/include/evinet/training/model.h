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

#ifndef EVINET_TRAINING_MODEL_H_
#define EVINET_TRAINING_MODEL_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evinet/beta_reasoning/beta_loss.h"
#include "evinet/beta_reasoning/encoder.h"
#include "evinet/evidential/heads.h"
#include "evinet/evidential/scores.h"
#include "evinet/graph/graph.h"
#include "evinet/graph/normalize.h"
#include "evinet/graph/split.h"
#include "evinet/training/config.h"

namespace evinet::training {

using numerics::DenseMatrix;
using numerics::Parameter;

// Encoder and disjunction exist only with dissonance reasoning; otherwise
// the evidence heads read the raw node features.
struct Model {
  evidential::Ablation ablation;
  std::optional<beta::EncoderParams> encoder;
  std::optional<beta::DisjunctionParams> disjunction;
  evidential::EvidenceHeadParams heads;

  static Model Init(std::size_t feature_dim, std::size_t num_known,
                    const TrainConfig& config, numerics::Rng& rng);

  std::size_t num_known() const { return heads.num_known(); }
  std::vector<Parameter*> Phase1Parameters();
  std::vector<Parameter*> Phase2Parameters();
  // Parameter values followed by batch-norm running moments.
  std::vector<std::pair<std::string, DenseMatrix*>> NamedTensors();
};

// Everything derived once from a graph and a split.
struct PreparedData {
  const graph::Graph* graph = nullptr;
  graph::SplitSpec split;
  graph::NormalizedAdjacency norm;
  DenseMatrix propagated;  // adj * X
  // Known-class indices of the train / val nodes.
  std::vector<std::size_t> train_labels;
  std::vector<std::size_t> val_labels;
  // members[k]: positions within split.train of class k.
  std::vector<std::vector<std::size_t>> members;

  PreparedData() = default;
  PreparedData(const PreparedData&) = delete;
  PreparedData& operator=(const PreparedData&) = delete;
  PreparedData(PreparedData&&) = default;
  PreparedData& operator=(PreparedData&&) = default;
};

// The graph must outlive the result.
PreparedData Prepare(const graph::Graph& g, graph::SplitSpec split);

// Inference-mode embeddings, class regions and head inputs.
struct RoundContext {
  DenseMatrix embeddings;  // n x 2d; empty without dissonance reasoning
  std::optional<beta::ClassEmbeddings> classes;
  evidential::HeadInputs inputs;
};

RoundContext BuildRoundContext(Model& model, const PreparedData& data,
                               numerics::Real bn_eps);

struct Inference {
  RoundContext context;
  evidential::NodeOpinionBatch batch;
  evidential::NodeScores scores;
};

Inference Infer(Model& model, const PreparedData& data, numerics::Real bn_eps);

// Hex FNV-1a over the node count, features, edges and labels.
std::string GraphFingerprint(const graph::Graph& g);

}  // namespace evinet::training

#endif  // EVINET_TRAINING_MODEL_H_
