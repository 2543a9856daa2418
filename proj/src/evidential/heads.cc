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

#include "evinet/evidential/heads.h"

#include <cmath>
#include <stdexcept>

namespace evinet::evidential {

namespace nad = numerics::ad;

void Ablation::Validate() const {
  if (use_vacuity_reasoning && !use_dissonance_reasoning)
    throw std::invalid_argument(
        "use_vacuity_reasoning requires use_dissonance_reasoning");
}

HeadParams HeadParams::Init(const std::string& prefix, std::size_t node_dim,
                            std::size_t class_dim, std::size_t hidden, Rng& rng) {
  if (node_dim == 0 || hidden == 0)
    throw std::invalid_argument("evidence head dimensions must be positive");
  const std::size_t fan_in = node_dim + class_dim;
  const Real limit = std::sqrt(6.0 / static_cast<Real>(fan_in + hidden));
  HeadParams h;
  h.w1_node = Parameter(prefix + ".w1_node",
                        numerics::RandomUniformMatrix(node_dim, hidden, rng, -limit, limit));
  h.w1_class = Parameter(prefix + ".w1_class",
                         class_dim ? numerics::RandomUniformMatrix(class_dim, hidden,
                                                                   rng, -limit, limit)
                                   : DenseMatrix());
  h.b1 = Parameter(prefix + ".b1", DenseMatrix(1, hidden, 0.0));
  h.w2 = Parameter(prefix + ".w2", numerics::GlorotUniform(hidden, 1, rng));
  h.b2 = Parameter(prefix + ".b2", DenseMatrix(1, 1, 0.0));
  return h;
}

std::vector<Parameter*> HeadParams::Parameters() {
  std::vector<Parameter*> out = {&w1_node};
  if (has_class_context()) out.push_back(&w1_class);
  out.insert(out.end(), {&b1, &w2, &b2});
  return out;
}

EvidenceHeadParams EvidenceHeadParams::Init(std::size_t num_known,
                                            std::size_t node_dim,
                                            std::size_t hidden,
                                            const Ablation& ablation, Rng& rng) {
  ablation.Validate();
  if (num_known == 0) throw std::invalid_argument("no known classes");
  const std::size_t class_dim = ablation.use_dissonance_reasoning ? node_dim : 0;
  EvidenceHeadParams p;
  for (std::size_t k = 0; k < num_known; ++k)
    p.class_heads.push_back(HeadParams::Init("head." + std::to_string(k), node_dim,
                                             class_dim, hidden, rng));
  if (ablation.use_vacuity_reasoning)
    p.novel_head = HeadParams::Init("head.novel", node_dim, class_dim, hidden, rng);
  return p;
}

std::vector<Parameter*> EvidenceHeadParams::Parameters() {
  std::vector<Parameter*> out;
  for (auto& h : class_heads)
    for (auto* q : h.Parameters()) out.push_back(q);
  if (novel_head)
    for (auto* q : novel_head->Parameters()) out.push_back(q);
  return out;
}

DenseMatrix ContextFeatures(const DenseMatrix& node_embeddings,
                            const beta::BetaEmbedding& cls) {
  const std::size_t d = cls.dim();
  numerics::RequireShape(node_embeddings.cols() == 2 * d,
                         "ContextFeatures: node embeddings " +
                             node_embeddings.ShapeString() +
                             " do not match class dimension " + std::to_string(d));
  DenseMatrix out(node_embeddings.rows(), 4 * d);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t c = 0; c < 2 * d; ++c) out(i, c) = node_embeddings(i, c);
    for (std::size_t j = 0; j < d; ++j) {
      out(i, 2 * d + j) = cls.alpha[j];
      out(i, 3 * d + j) = cls.beta[j];
    }
  }
  return out;
}

HeadInputs MakeHeadInputs(const SparseMatrix& adj, const DenseMatrix& node_rows,
                          const std::vector<beta::BetaEmbedding>& classes,
                          const beta::BetaEmbedding* novel,
                          const Ablation& ablation) {
  ablation.Validate();
  HeadInputs in;
  const std::size_t n = node_rows.rows();
  numerics::RequireShape(adj.rows() == n, "MakeHeadInputs: adjacency/node mismatch");
  if (ablation.use_context) {
    in.adj = &adj;
    in.node_part = numerics::SpMM(adj, node_rows);
    in.ones_part = numerics::SpMM(adj, DenseMatrix(n, 1, 1.0));
  } else {
    in.node_part = node_rows;
    in.ones_part = DenseMatrix(n, 1, 1.0);
  }
  if (ablation.use_dissonance_reasoning)
    for (const auto& c : classes) in.class_rows.push_back(c.ToRow());
  if (ablation.use_vacuity_reasoning) {
    if (novel == nullptr)
      throw std::invalid_argument("MakeHeadInputs: vacuity reasoning needs C_Nov");
    in.novel_row = novel->ToRow();
  }
  return in;
}

namespace {

Var Propagate(const HeadInputs& in, Var x) {
  return in.adj ? nad::SpMM(*in.adj, x) : x;
}

Var HeadForward(Tape& tape, const HeadInputs& in, HeadParams& h,
                const DenseMatrix* class_row, const ForwardOptions& o) {
  Var pre = nad::MatMul(tape.Constant(in.node_part), tape.Leaf(h.w1_node));
  if (h.has_class_context()) {
    numerics::RequireShape(class_row != nullptr && !class_row->empty(),
                           "evidence head expects a class embedding");
    Var class_term = nad::MatMul(tape.Constant(*class_row), tape.Leaf(h.w1_class));
    pre = nad::Add(pre, nad::MatMul(tape.Constant(in.ones_part), class_term));
  }
  Var hidden = nad::Relu(nad::AddRowVector(pre, tape.Leaf(h.b1)));
  if (o.training && o.dropout > 0.0) {
    if (o.rng == nullptr) throw std::invalid_argument("dropout needs an Rng");
    hidden = nad::Dropout(hidden, o.dropout, *o.rng, true);
  }
  Var out = Propagate(in, nad::MatMul(hidden, tape.Leaf(h.w2)));
  return nad::Softplus(nad::AddRowVector(out, tape.Leaf(h.b2)));
}

}  // namespace

EvidenceVars EvidenceForward(Tape& tape, const HeadInputs& in,
                             EvidenceHeadParams& p, const ForwardOptions& o) {
  const std::size_t k = p.num_known();
  numerics::RequireShape(in.node_part.cols() == p.class_heads.front().w1_node.value.rows(),
                         "EvidenceForward: input width " +
                             std::to_string(in.node_part.cols()) +
                             " does not match the heads");
  std::vector<Var> columns;
  for (std::size_t c = 0; c < k; ++c) {
    const DenseMatrix* row = c < in.class_rows.size() ? &in.class_rows[c] : nullptr;
    columns.push_back(HeadForward(tape, in, p.class_heads[c], row, o));
  }
  EvidenceVars out;
  out.evidence = nad::ConcatCols(columns);
  if (p.novel_head) {
    out.prior_weight = nad::AddScalar(
        HeadForward(tape, in, *p.novel_head, &in.novel_row, o), kPriorWeightFloor);
  } else {
    out.prior_weight =
        tape.Constant(DenseMatrix(in.num_nodes(), 1, static_cast<Real>(k)));
  }
  return out;
}

NodeOpinionBatch EvidenceInference(const HeadInputs& inputs,
                                   EvidenceHeadParams& params) {
  Tape tape;
  const EvidenceVars v = EvidenceForward(tape, inputs, params);
  return {v.evidence.value(), v.prior_weight.value()};
}

}  // namespace evinet::evidential
