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

#include "evinet/training/model.h"

#include <cstring>

#include "evinet/common/file_util.h"

namespace evinet::training {

Model Model::Init(std::size_t feature_dim, std::size_t num_known,
                  const TrainConfig& config, numerics::Rng& rng) {
  Model m;
  m.ablation = config.ablation;
  m.ablation.Validate();
  std::size_t head_dim = feature_dim;
  if (m.ablation.use_dissonance_reasoning) {
    m.encoder = beta::EncoderParams::Init(feature_dim, config.hidden_dim,
                                          config.embedding_dim, rng);
    m.disjunction = beta::DisjunctionParams::Init(config.embedding_dim,
                                                  config.disjunction_dim, rng);
    head_dim = 2 * config.embedding_dim;
  }
  m.heads = evidential::EvidenceHeadParams::Init(num_known, head_dim,
                                                 config.head_hidden_dim, m.ablation, rng);
  return m;
}

std::vector<Parameter*> Model::Phase1Parameters() {
  std::vector<Parameter*> out;
  if (encoder)
    for (Parameter* p : encoder->Parameters()) out.push_back(p);
  if (disjunction)
    for (Parameter* p : disjunction->Parameters()) out.push_back(p);
  return out;
}

std::vector<Parameter*> Model::Phase2Parameters() { return heads.Parameters(); }

std::vector<std::pair<std::string, DenseMatrix*>> Model::NamedTensors() {
  std::vector<std::pair<std::string, DenseMatrix*>> out;
  for (Parameter* p : Phase1Parameters()) out.emplace_back(p->name, &p->value);
  for (Parameter* p : Phase2Parameters()) out.emplace_back(p->name, &p->value);
  if (encoder)
    for (auto& b : encoder->Buffers()) out.push_back(b);
  return out;
}

PreparedData Prepare(const graph::Graph& g, graph::SplitSpec split) {
  graph::ValidateSplit(g, split);
  PreparedData d;
  d.graph = &g;
  d.split = std::move(split);
  d.norm = graph::NormalizeAdjacency(g);
  d.propagated = numerics::SpMM(d.norm.matrix, g.features);
  d.members.resize(d.split.num_known());
  for (std::size_t pos = 0; pos < d.split.train.size(); ++pos) {
    const std::size_t k = *d.split.KnownIndex(g.labels[d.split.train[pos]]);
    d.train_labels.push_back(k);
    d.members[k].push_back(pos);
  }
  for (std::size_t i : d.split.val) d.val_labels.push_back(*d.split.KnownIndex(g.labels[i]));
  for (std::size_t k = 0; k < d.members.size(); ++k)
    if (d.members[k].empty())
      throw graph::GraphError("known class " + std::to_string(d.split.id_classes[k]) +
                              " has no training nodes");
  return d;
}

RoundContext BuildRoundContext(Model& model, const PreparedData& data,
                               numerics::Real bn_eps) {
  RoundContext ctx;
  const auto& adj = data.norm.matrix;
  if (!model.ablation.use_dissonance_reasoning) {
    ctx.inputs = evidential::MakeHeadInputs(adj, data.graph->features, {}, nullptr,
                                            model.ablation);
    return ctx;
  }
  ctx.embeddings = beta::EncodeInference(adj, data.propagated, *model.encoder, bn_eps);
  {
    numerics::Tape tape;
    numerics::Var nodes = tape.Constant(ctx.embeddings);
    numerics::Var train = numerics::ad::GatherRows(nodes, data.split.train);
    ctx.classes = beta::ClassEmbeddings::FromVars(
        beta::BuildClassEmbeddings(train, data.members, *model.disjunction));
  }
  ctx.inputs = evidential::MakeHeadInputs(adj, ctx.embeddings, ctx.classes->classes,
                                          &ctx.classes->novel, model.ablation);
  return ctx;
}

Inference Infer(Model& model, const PreparedData& data, numerics::Real bn_eps) {
  Inference out;
  out.context = BuildRoundContext(model, data, bn_eps);
  out.batch = evidential::EvidenceInference(out.context.inputs, model.heads);
  out.scores = evidential::Score(out.batch);
  return out;
}

std::string GraphFingerprint(const graph::Graph& g) {
  std::uint64_t h = Fnv1a64(std::to_string(g.num_nodes()) + ":" +
                            std::to_string(g.num_classes));
  auto mix = [&h](const void* p, std::size_t bytes) {
    h = Fnv1a64(std::string_view(static_cast<const char*>(p), bytes), h);
  };
  const auto feats = g.features.data();
  mix(feats.data(), feats.size() * sizeof(numerics::Real));
  for (const auto& [u, v] : g.EdgeList()) {
    const std::uint64_t e[2] = {u, v};
    mix(e, sizeof(e));
  }
  for (std::size_t y : g.labels) {
    const std::uint64_t v = y;
    mix(&v, sizeof(v));
  }
  return HexDigest(h);
}

}  // namespace evinet::training
