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

#include <cmath>

#include "evinet/evidential/dirichlet_loss.h"
#include "evinet/evidential/heads.h"
#include "evinet/evidential/scores.h"
#include "evinet/graph/generators.h"
#include "evinet/graph/normalize.h"
#include "evinet/numerics/grad_check.h"
#include "evinet/numerics/special_functions.h"
#include "gtest/gtest.h"

namespace evinet::evidential {
namespace {

namespace nad = numerics::ad;
using beta::BetaEmbedding;

TEST(ContextFeatures, Layout) {
  const DenseMatrix nodes{{1, 2}, {1, 2}};
  const DenseMatrix out = ContextFeatures(nodes, BetaEmbedding{{3}, {4}});
  EXPECT_EQ(out, (DenseMatrix{{1, 2, 3, 4}, {1, 2, 3, 4}}));
  const DenseMatrix other = ContextFeatures(nodes, BetaEmbedding{{5}, {6}});
  for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(other(0, c), out(0, c));
  EXPECT_EQ(ContextFeatures(DenseMatrix{{1, 2}}, BetaEmbedding{{3}, {4}}).cols(), 4u);
  EXPECT_THROW(ContextFeatures(nodes, BetaEmbedding{{3, 3}, {4, 4}}), numerics::ShapeError);
}

struct Fixture {
  graph::Graph g;
  graph::NormalizedAdjacency norm;
  DenseMatrix embeddings;  // n x 2d
  std::vector<BetaEmbedding> classes;
  BetaEmbedding novel;
};

Fixture MakeFixture(std::uint64_t seed, std::size_t n = 30, std::size_t k = 3,
                    std::size_t d = 2) {
  Fixture f;
  f.g = graph::GenerateErdosRenyi(n, 0.15, 4, seed, k);
  f.norm = graph::NormalizeAdjacency(f.g);
  Rng rng(seed);
  f.embeddings = DenseMatrix(n, 2 * d);
  for (auto& v : f.embeddings.data()) v = rng.Uniform(0.2, 3.0);
  for (std::size_t c = 0; c < k; ++c) {
    BetaEmbedding e;
    for (std::size_t j = 0; j < d; ++j) {
      e.alpha.push_back(rng.Uniform(0.2, 3.0));
      e.beta.push_back(rng.Uniform(0.2, 3.0));
    }
    f.classes.push_back(e);
  }
  f.novel = beta::Negation(f.classes[0]);
  return f;
}

TEST(EvidenceForward, ZeroWeightsGiveUniformEvidence) {
  std::vector<graph::Edge> ring;
  for (std::size_t i = 0; i < 8; ++i) ring.emplace_back(i, (i + 1) % 8);
  const graph::Graph g =
      graph::MakeGraph("ring", 8, ring, DenseMatrix(8, 2), std::vector<std::size_t>(8, 0), 2);
  const auto norm = graph::NormalizeAdjacency(g);
  Rng rng(1);
  Ablation full;
  EvidenceHeadParams p = EvidenceHeadParams::Init(2, 2, 4, full, rng);
  for (auto* q : p.Parameters()) q->value.Fill(0.0);
  p.class_heads[0].b2.value(0, 0) = 0.3;
  p.class_heads[0].b1.value.Fill(1.0);
  DenseMatrix nodes(8, 2);
  Rng fill(2);
  for (auto& v : nodes.data()) v = fill.Uniform(0.5, 2);
  const BetaEmbedding c{{1.0}, {2.0}};
  const BetaEmbedding nov = beta::Negation(c);
  const HeadInputs in = MakeHeadInputs(norm.matrix, nodes, {c, c}, &nov, full);
  const NodeOpinionBatch b = EvidenceInference(in, p);
  ASSERT_EQ(b.evidence.rows(), 8u);
  ASSERT_EQ(b.evidence.cols(), 2u);
  ASSERT_EQ(b.prior_weight.cols(), 1u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(b.evidence(i, 0), numerics::Softplus(0.3));
    EXPECT_EQ(b.evidence(i, 1), numerics::Softplus(0.0));
    EXPECT_EQ(b.prior_weight(i, 0), numerics::Softplus(0.0) + kPriorWeightFloor);
  }
}

TEST(EvidenceForward, OutputsNonnegativeForRandomParameters) {
  Fixture f = MakeFixture(3);
  for (int t = 0; t < 1000; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    EvidenceHeadParams p = EvidenceHeadParams::Init(3, 4, 3, {}, rng);
    for (auto* q : p.Parameters())
      for (auto& v : q->value.data()) v = rng.Uniform(-5, 5);
    const HeadInputs in = MakeHeadInputs(f.norm.matrix, f.embeddings, f.classes, &f.novel, {});
    const NodeOpinionBatch b = EvidenceInference(in, p);
    for (Real v : b.evidence.data()) ASSERT_GE(v, 0.0);
    for (Real v : b.prior_weight.data()) ASSERT_GT(v, 0.0);
  }
}

TEST(EvidenceForward, AblationSwitches) {
  Fixture f = MakeFixture(4);
  Rng rng(4);
  Ablation fixed;
  fixed.use_vacuity_reasoning = false;
  EvidenceHeadParams p = EvidenceHeadParams::Init(3, 4, 5, fixed, rng);
  EXPECT_FALSE(p.novel_head.has_value());
  const NodeOpinionBatch b =
      EvidenceInference(MakeHeadInputs(f.norm.matrix, f.embeddings, f.classes, nullptr, fixed), p);
  for (Real w : b.prior_weight.data()) EXPECT_EQ(w, 3.0);

  // MLP heads equal GCN heads over an explicit identity operator.
  Ablation mlp;
  mlp.use_context = false;
  Rng r1(9), r2(9);
  EvidenceHeadParams pm = EvidenceHeadParams::Init(3, 4, 5, mlp, r1);
  EvidenceHeadParams pg = EvidenceHeadParams::Init(3, 4, 5, {}, r2);
  const auto eye = numerics::SparseMatrix::Identity(f.g.num_nodes());
  const NodeOpinionBatch bm = EvidenceInference(
      MakeHeadInputs(f.norm.matrix, f.embeddings, f.classes, &f.novel, mlp), pm);
  const NodeOpinionBatch bg =
      EvidenceInference(MakeHeadInputs(eye, f.embeddings, f.classes, &f.novel, {}), pg);
  EXPECT_LT(numerics::MaxAbsDiff(bm.evidence, bg.evidence), 1e-14);
  EXPECT_LT(numerics::MaxAbsDiff(bm.prior_weight, bg.prior_weight), 1e-14);

  // Raw-feature heads with neither reasoning module.
  Ablation raw{false, false, true};
  EvidenceHeadParams pr = EvidenceHeadParams::Init(3, 4, 5, raw, rng);
  EXPECT_FALSE(pr.class_heads[0].has_class_context());
  const NodeOpinionBatch br =
      EvidenceInference(MakeHeadInputs(f.norm.matrix, f.g.features, {}, nullptr, raw), pr);
  EXPECT_EQ(br.evidence.cols(), 3u);

  EXPECT_THROW((Ablation{false, true, true}).Validate(), std::invalid_argument);
}

TEST(EvidenceForward, MatchesExplicitContextFeatures) {
  // Head layer 1 on [N | 1 c^T] must equal the split-weight computation.
  Fixture f = MakeFixture(5, 12, 2, 2);
  Rng rng(5);
  EvidenceHeadParams p = EvidenceHeadParams::Init(2, 4, 3, {}, rng);
  const NodeOpinionBatch b = EvidenceInference(
      MakeHeadInputs(f.norm.matrix, f.embeddings, f.classes, &f.novel, {}), p);
  const DenseMatrix adj = f.norm.matrix.ToDense();
  for (std::size_t k = 0; k < 2; ++k) {
    HeadParams& h = p.class_heads[k];
    const DenseMatrix x = ContextFeatures(f.embeddings, f.classes[k]);
    DenseMatrix w1(8, 3);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        w1(r, c) = h.w1_node.value(r, c);
        w1(r + 4, c) = h.w1_class.value(r, c);
      }
    DenseMatrix hidden = numerics::MatMul(adj, numerics::MatMul(x, w1));
    for (std::size_t i = 0; i < hidden.rows(); ++i)
      for (std::size_t c = 0; c < 3; ++c)
        hidden(i, c) = std::max(0.0, hidden(i, c) + h.b1.value(0, c));
    const DenseMatrix out = numerics::MatMul(adj, numerics::MatMul(hidden, h.w2.value));
    for (std::size_t i = 0; i < out.rows(); ++i)
      EXPECT_NEAR(b.evidence(i, k), numerics::Softplus(out(i, 0) + h.b2.value(0, 0)), 1e-12);
  }
}

NodeOpinionBatch Batch(std::vector<std::vector<Real>> e, std::vector<Real> w) {
  NodeOpinionBatch b;
  b.evidence = DenseMatrix(e.size(), e.front().size());
  b.prior_weight = DenseMatrix(w.size(), 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t k = 0; k < e[i].size(); ++k) b.evidence(i, k) = e[i][k];
    b.prior_weight(i, 0) = w[i];
  }
  return b;
}

TEST(Score, Examples) {
  const NodeScores s = Score(Batch({{0, 0}, {2, 2}, {4, 0}}, {2, 2, 2}));
  EXPECT_EQ(s.vacuity[0], 1.0);
  EXPECT_EQ(s.dissonance[0], 0.0);
  EXPECT_EQ(s.probability(0, 0), 0.5);
  EXPECT_EQ(s.prediction[0], 0u);
  EXPECT_NEAR(s.vacuity[1], 1.0 / 3, 1e-15);
  EXPECT_NEAR(s.dissonance[1], 2.0 / 3, 1e-15);
  EXPECT_EQ(s.prediction[2], 0u);
  EXPECT_NEAR(s.probability(2, 0), 5.0 / 6, 1e-15);
  EXPECT_NEAR(s.probability(2, 1), 1.0 / 6, 1e-15);
}

TEST(Score, MassIdentityAndScaleInvariantPrediction) {
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::vector<Real>> e(1, std::vector<Real>(4));
    for (auto& v : e[0]) v = rng.Uniform(0, 10);
    const Real w = rng.Uniform(0.01, 5);
    const NodeScores s = Score(Batch(e, {w}));
    Real total = w;
    for (Real v : e[0]) total += v;
    Real mass = s.vacuity[0];
    for (Real v : e[0]) mass += v / total;
    EXPECT_NEAR(mass, 1.0, 1e-9);
    const Real c = rng.Uniform(0.1, 10);
    auto scaled = e;
    for (auto& v : scaled[0]) v *= c;
    EXPECT_EQ(Score(Batch(scaled, {w * c})).prediction[0], s.prediction[0]);
  }
}

TEST(Score, CsvLayout) {
  const NodeScores s = Score(Batch({{4, 0}}, {2}));
  const std::vector<std::size_t> ids = {17};
  const std::string csv = ScoresToCsv(s, ids);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "node_id,prediction,dissonance,vacuity,p_0,p_1");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1, 7), "17,0,0,");
}

TEST(DirichletLoss, Examples) {
  const std::vector<std::size_t> rows = {0}, y0 = {0};
  EXPECT_NEAR(DirichletLossValue(Batch({{1, 1}}, {2}), rows, y0), 5.0 / 6, 1e-12);
  const Real tiny = DirichletLossValue(Batch({{50, 0}}, {1e-6}), rows, y0);
  EXPECT_GT(tiny, 0.0);
  EXPECT_LT(tiny, 1e-6);
}

TEST(DirichletLoss, MaskAndMonotonicity) {
  const std::vector<std::size_t> rows = {0, 2}, labels = {1, 0};
  NodeOpinionBatch b = Batch({{1, 2}, {3, 3}, {0.5, 0.1}}, {1, 2, 0.3});
  const Real base = DirichletLossValue(b, rows, labels);
  b.evidence(1, 0) = 100;
  b.prior_weight(1, 0) = 7;
  EXPECT_EQ(DirichletLossValue(b, rows, labels), base);
  b.evidence(0, 1) += 0.5;
  EXPECT_LT(DirichletLossValue(b, rows, labels), base);
}

TEST(DirichletLoss, GradientsMatchFiniteDifferences) {
  Rng rng(12);
  numerics::Parameter e("e", DenseMatrix(6, 3)), w("w", DenseMatrix(6, 1));
  for (auto& v : e.value.data()) v = rng.Uniform(0.05, 4);
  for (auto& v : w.value.data()) v = rng.Uniform(0.1, 4);
  const std::vector<std::size_t> rows = {0, 2, 3, 5}, labels = {2, 0, 1, 1};
  auto r = numerics::GradCheck(
      [&](Tape& t) { return DirichletLoss(t.Leaf(e), t.Leaf(w), rows, labels); }, {&e, &w});
  EXPECT_LT(numerics::MaxRelativeError(r), 1e-4);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Fixture f = MakeFixture(seed);
    Rng prng(seed);
    EvidenceHeadParams p = EvidenceHeadParams::Init(3, 4, 4, {}, prng);
    const HeadInputs in = MakeHeadInputs(f.norm.matrix, f.embeddings, f.classes, &f.novel, {});
    std::vector<std::size_t> train, y;
    for (std::size_t i = 0; i < 30; i += 3) {
      train.push_back(i);
      y.push_back(f.g.labels[i]);
    }
    auto reports = numerics::GradCheck(
        [&](Tape& t) {
          const EvidenceVars v = EvidenceForward(t, in, p);
          return DirichletLoss(v.evidence, v.prior_weight, train, y);
        },
        p.Parameters());
    for (const auto& rep : reports) EXPECT_LT(rep.max_relative_error, 1e-4) << rep.parameter;
  }
}

}  // namespace
}  // namespace evinet::evidential
