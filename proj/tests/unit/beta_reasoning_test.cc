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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../support/kl_oracle.h"
#include "evinet/beta_reasoning/beta_embedding.h"
#include "evinet/beta_reasoning/beta_loss.h"
#include "evinet/beta_reasoning/disjunction.h"
#include "evinet/beta_reasoning/encoder.h"
#include "evinet/graph/generators.h"
#include "evinet/graph/normalize.h"
#include "evinet/numerics/grad_check.h"
#include "evinet/numerics/special_functions.h"
#include "gtest/gtest.h"

namespace evinet::beta {
namespace {

namespace nad = numerics::ad;

// mpmath, 30 digits: KL(Beta(2,2) || Beta(1,1)) = ln 6 - 5/3.
constexpr double kKlBeta22Uniform = 0.125092802561388;

BetaEmbedding RandomEmbedding(Rng& rng, std::size_t d, Real lo = 0.2, Real hi = 20.0) {
  BetaEmbedding e;
  for (std::size_t j = 0; j < d; ++j) {
    e.alpha.push_back(rng.Uniform(lo, hi));
    e.beta.push_back(rng.Uniform(lo, hi));
  }
  return e;
}

TEST(BetaKL, Examples) {
  EXPECT_EQ(BetaKL(3.5, 0.7, 3.5, 0.7), 0.0);
  EXPECT_NEAR(BetaKL(2, 2, 1, 1), kKlBeta22Uniform, 1e-12);
  EXPECT_NEAR(BetaKL(2, 2, 1, 1), std::log(6.0) - 5.0 / 3.0, 1e-12);
  Rng rng(3);
  const BetaEmbedding a = RandomEmbedding(rng, 4), b = RandomEmbedding(rng, 4);
  EXPECT_GT(std::abs(Dist(a, b) - Dist(b, a)), 1e-3);
  EXPECT_THROW(Dist(a, RandomEmbedding(rng, 3)), std::invalid_argument);
}

TEST(BetaKL, QuadratureOracleSelfCheck) {
  EXPECT_NEAR(testing::QuadratureBetaKL(2, 2, 1, 1), kKlBeta22Uniform, 1e-12);
  EXPECT_NEAR(testing::QuadratureBetaKL(0.3, 0.5, 0.3, 0.5), 0.0, 1e-12);
}

TEST(BetaKL, MatchesQuadrature) {
  Rng rng(99);
  Real worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Real an = rng.Uniform(0.2, 20), bn = rng.Uniform(0.2, 20);
    const Real ac = rng.Uniform(0.2, 20), bc = rng.Uniform(0.2, 20);
    worst = std::max(worst, std::abs(BetaKL(an, bn, ac, bc) -
                                     testing::QuadratureBetaKL(an, bn, ac, bc)));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Dist, NonnegativeAndZeroOnSelf) {
  Rng rng(5);
  for (int t = 0; t < 10000; ++t) {
    const BetaEmbedding a = RandomEmbedding(rng, 3), b = RandomEmbedding(rng, 3);
    EXPECT_GE(Dist(a, b), -1e-9);
    EXPECT_LE(std::abs(Dist(a, a)), 1e-9);
  }
}

TEST(BetaDistances, MatchesScalarDistAndGradients) {
  Rng rng(11);
  numerics::Parameter nodes("nodes", DenseMatrix(5, 6)), targets("targets", DenseMatrix(3, 6));
  for (auto& v : nodes.value.data()) v = rng.Uniform(0.3, 5.0);
  for (auto& v : targets.value.data()) v = rng.Uniform(0.3, 5.0);
  Tape tape;
  const Var d = ad::BetaDistances(tape.Constant(nodes.value), tape.Constant(targets.value));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t t = 0; t < 3; ++t)
      EXPECT_NEAR(d.value()(i, t),
                  Dist(BetaEmbedding::FromRow(nodes.value.row(i)),
                       BetaEmbedding::FromRow(targets.value.row(t))),
                  1e-12);
  const DenseMatrix mix = numerics::RandomNormalMatrix(5, 3, rng);
  const auto reports = numerics::GradCheck(
      [&](Tape& t) {
        return nad::Sum(nad::Mul(ad::BetaDistances(t.Leaf(nodes), t.Leaf(targets)),
                                 t.Constant(mix)));
      },
      {&nodes, &targets});
  EXPECT_LT(numerics::MaxRelativeError(reports), 1e-6);
}

TEST(Negation, ExamplesAndInvolution) {
  const BetaEmbedding e{{2.0, 1.0}, {0.5, 1.0}};
  EXPECT_EQ(Negation(e), (BetaEmbedding{{0.5, 1.0}, {2.0, 1.0}}));
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const BetaEmbedding r = RandomEmbedding(rng, 5, 1e-3, 1e3);
    const BetaEmbedding back = Negation(Negation(r));
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(back.alpha[j], r.alpha[j], 1e-12 * r.alpha[j]);
      EXPECT_NEAR(back.beta[j], r.beta[j], 1e-12 * r.beta[j]);
    }
  }
}

TEST(Disjunction, PermutationAndDuplicationInvariantExactly) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    DisjunctionParams p = DisjunctionParams::Init(3, 8, rng);
    for (auto& v : p.w.value.data()) v = rng.Uniform(-2, 2);
    for (auto& v : p.bias.value.data()) v = rng.Uniform(-1, 1);
    std::vector<BetaEmbedding> in;
    const std::size_t m = 1 + rng.UniformInt(7);
    for (std::size_t i = 0; i < m; ++i) in.push_back(RandomEmbedding(rng, 3, 0.01, 50));
    const BetaEmbedding base = Disjunction(in, p);
    base.Validate();
    std::vector<BetaEmbedding> shuffled = in;
    rng.Shuffle(shuffled);
    EXPECT_EQ(Disjunction(shuffled, p), base);
    std::vector<BetaEmbedding> doubled = in;
    doubled.insert(doubled.end(), in.begin(), in.end());
    rng.Shuffle(doubled);
    EXPECT_EQ(Disjunction(doubled, p), base);
  }
}

TEST(Disjunction, EmptyInputIsAnError) {
  Rng rng(2);
  DisjunctionParams p = DisjunctionParams::Init(2, 4, rng);
  EXPECT_THROW(Disjunction(std::vector<BetaEmbedding>{}, p), std::invalid_argument);
}

TEST(ClassEmbeddings, StructuralProperties) {
  Rng rng(8);
  DisjunctionParams p = DisjunctionParams::Init(2, 6, rng);
  DenseMatrix rows(9, 4);
  for (auto& v : rows.data()) v = rng.Uniform(0.2, 4);
  const std::vector<std::vector<std::size_t>> members = {{0, 3, 5}, {1, 2}, {4, 6, 7, 8}};

  Tape tape;
  const Var nodes = tape.Constant(rows);
  const ClassEmbeddings ce =
      ClassEmbeddings::FromVars(BuildClassEmbeddings(nodes, members, p));
  EXPECT_EQ(ce.novel, Negation(ce.known));

  const std::vector<std::vector<std::size_t>> relabeled = {members[2], members[0], members[1]};
  const ClassEmbeddings re =
      ClassEmbeddings::FromVars(BuildClassEmbeddings(nodes, relabeled, p));
  EXPECT_EQ(re.classes[0], ce.classes[2]);
  EXPECT_EQ(re.classes[1], ce.classes[0]);
  EXPECT_EQ(re.known, ce.known);
  EXPECT_EQ(re.novel, ce.novel);

  const ClassEmbeddings again =
      ClassEmbeddings::FromVars(BuildClassEmbeddings(nodes, members, p));
  EXPECT_EQ(again.known, ce.known);

  const ClassEmbeddings single =
      ClassEmbeddings::FromVars(BuildClassEmbeddings(nodes, {members[0]}, p));
  EXPECT_EQ(single.known, Disjunction(std::vector<BetaEmbedding>{single.classes[0]}, p));

  EXPECT_THROW(BuildClassEmbeddings(nodes, {{0}, {}}, p), std::invalid_argument);
}

TEST(BetaLoss, Examples) {
  const Real g = 7.5;
  EXPECT_NEAR(BetaLossFromDistances(std::vector<Real>{g, g}, g, 0, g),
              2.0 * std::numbers::ln2, 1e-15);
  EXPECT_LT(-numerics::LogSigmoid(55.0 - 0.0), 1e-20);
  const Real far = BetaLossFromDistances(std::vector<Real>{3.0, 9.0}, 9.0, 0, 5.0);
  const Real near = BetaLossFromDistances(std::vector<Real>{1.0, 9.0}, 9.0, 0, 5.0);
  EXPECT_LT(near, far);
}

TEST(BetaLoss, TapeMatchesScalarReference) {
  Rng rng(4);
  DisjunctionParams p = DisjunctionParams::Init(3, 5, rng);
  DenseMatrix rows(10, 6);
  for (auto& v : rows.data()) v = rng.Uniform(0.3, 6);
  const std::vector<std::vector<std::size_t>> members = {{0, 1, 2}, {3, 4, 5, 6}, {7, 8, 9}};
  std::vector<std::size_t> labels = {0, 0, 0, 1, 1, 1, 1, 2, 2, 2};
  Tape tape;
  const Var nodes = tape.Constant(rows);
  const ClassEmbeddingVars cv = BuildClassEmbeddings(nodes, members, p);
  const Real gamma = 4.0;
  const Real loss = BetaLoss(nodes, labels, cv, gamma).value()(0, 0);
  const ClassEmbeddings ce = ClassEmbeddings::FromVars(cv);
  Real expected = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    const BetaEmbedding n = BetaEmbedding::FromRow(rows.row(i));
    std::vector<Real> d;
    for (const auto& c : ce.classes) d.push_back(Dist(n, c));
    expected += BetaLossFromDistances(d, Dist(n, ce.novel), labels[i], gamma);
  }
  EXPECT_NEAR(loss, expected / 10.0, 1e-12);
}

struct SmallProblem {
  graph::Graph g;
  graph::NormalizedAdjacency norm;
  DenseMatrix propagated;
  std::vector<std::size_t> train;
  std::vector<std::size_t> labels;
  std::vector<std::vector<std::size_t>> members;
};

SmallProblem MakeSmallProblem(std::uint64_t seed) {
  SmallProblem s;
  s.g = graph::GenerateErdosRenyi(30, 0.15, 5, seed, 3);
  s.norm = graph::NormalizeAdjacency(s.g);
  s.propagated = numerics::SpMM(s.norm.matrix, s.g.features);
  s.members.resize(3);
  for (std::size_t i = 0; i < 30; i += 2) {
    s.train.push_back(i);
    s.labels.push_back(s.g.labels[i]);
    s.members[s.g.labels[i]].push_back(s.train.size() - 1);
  }
  return s;
}

TEST(BetaLoss, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SmallProblem s = MakeSmallProblem(seed);
    Rng rng(seed);
    EncoderParams enc = EncoderParams::Init(5, 6, 3, rng);
    DisjunctionParams dis = DisjunctionParams::Init(3, 5, rng);
    EncodeOptions o;
    o.training = true;
    o.update_running_stats = false;
    std::vector<numerics::Parameter*> params = enc.Parameters();
    for (auto* q : dis.Parameters()) params.push_back(q);
    const auto reports = numerics::GradCheck(
        [&](Tape& t) {
          const Var nodes = nad::GatherRows(
              Encode(t, s.norm.matrix, s.propagated, enc, o), s.train);
          return BetaLoss(nodes, s.labels, BuildClassEmbeddings(nodes, s.members, dis),
                          2.0);
        },
        params);
    for (const auto& r : reports) EXPECT_LT(r.max_relative_error, 1e-4) << r.parameter;
  }
}

TEST(Encoder, PositiveDeterministicAndEquivariant) {
  SmallProblem s = MakeSmallProblem(7);
  Rng rng(7);
  EncoderParams enc = EncoderParams::Init(5, 8, 4, rng);
  const DenseMatrix a = EncodeInference(s.norm.matrix, s.propagated, enc);
  const DenseMatrix b = EncodeInference(s.norm.matrix, s.propagated, enc);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rows(), 30u);
  EXPECT_EQ(a.cols(), 8u);
  for (Real v : a.data()) EXPECT_GT(v, 0.0);

  // Edgeless graph, identical feature rows.
  graph::Graph flat = graph::MakeGraph("flat", 4, {}, DenseMatrix(4, 5, 0.7),
                                       {0, 1, 0, 1}, 2);
  const auto norm = graph::NormalizeAdjacency(flat);
  const DenseMatrix out = EncodeInference(norm.matrix, flat.features, enc);
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t c = 0; c < out.cols(); ++c) EXPECT_EQ(out(i, c), out(0, c));

  Tape tape;
  EncodeOptions train;
  train.training = true;
  train.dropout = 0.5;
  Rng drop(1);
  train.rng = &drop;
  const DenseMatrix before = enc.bn1_mean;
  Encode(tape, s.norm.matrix, s.propagated, enc, train);
  EXPECT_FALSE(enc.bn1_mean == before);
  EXPECT_THROW(Encode(tape, s.norm.matrix, DenseMatrix(30, 4), enc, {}),
               numerics::ShapeError);
}

TEST(Operators, ProducedParametersArePositive) {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    DisjunctionParams p = DisjunctionParams::Init(2, 4, rng);
    for (auto& v : p.h2_b.value.data()) v = rng.Uniform(-10, 10);
    DenseMatrix rows(3, 4);
    for (auto& v : rows.data()) v = rng.Uniform(1e-3, 30);
    Tape tape;
    const auto cv = BuildClassEmbeddings(tape.Constant(rows), {{0}, {1, 2}}, p);
    const ClassEmbeddings ce = ClassEmbeddings::FromVars(cv);
    for (const auto& c : ce.classes) c.Validate();
    ce.known.Validate();
    ce.novel.Validate();
  }
}

}  // namespace
}  // namespace evinet::beta
