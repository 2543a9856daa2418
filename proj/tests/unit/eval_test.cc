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

#include "../support/metric_oracles.h"
#include "evinet/eval/baseline.h"
#include "evinet/eval/metrics.h"
#include "evinet/eval/report.h"
#include "evinet/graph/generators.h"
#include "evinet/numerics/random.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace evinet::eval {
namespace {

using V = std::vector<Real>;

TEST(Accuracy, Examples) {
  const std::vector<std::size_t> y = {0, 1, 2, 1};
  EXPECT_EQ(Accuracy(y, y), 1.0);
  EXPECT_EQ(Accuracy(std::vector<std::size_t>{0, 1, 0, 0}, y), 0.5);
  EXPECT_THROW(Accuracy(std::vector<std::size_t>{}, std::vector<std::size_t>{}), MetricError);
  numerics::Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::size_t> p(1 + rng.UniformInt(50)), l(p.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = rng.UniformInt(3);
      l[i] = rng.UniformInt(3);
      hits += p[i] == l[i];
    }
    EXPECT_EQ(Accuracy(p, l), static_cast<Real>(hits) / p.size());
  }
}

TEST(Aurc, Examples) {
  EXPECT_EQ(Aurc(V{0.3, 0.9, 0.1}, {true, true, true}), 0.0);
  EXPECT_EQ(Aurc(V{0.9, 0.8}, {true, false}), 0.25);
}

TEST(Auroc, Examples) {
  EXPECT_EQ(Auroc(V{0.8, 0.9}, V{0.1, 0.2}), 1.0);
  EXPECT_EQ(Auroc(V{0.5, 0.9}, V{0.1, 0.8}), 0.75);
  EXPECT_EQ(Auroc(V{0.1, 0.4, 0.4, 0.7}, V{0.7, 0.4, 0.1, 0.4}), 0.5);
  EXPECT_THROW(Auroc(V{}, V{1.0}), MetricError);
}

TEST(FprAtTpr, Examples) {
  EXPECT_EQ(FprAtTpr(V{0.1, 0.2, 0.3}, V{0.5, 0.6}), 0.0);
  EXPECT_EQ(FprAtTpr(V{0.4, 0.4}, V{0.4, 0.4, 0.4}), 1.0);
  EXPECT_THROW(FprAtTpr(V{0.1}, V{}), MetricError);
}

TEST(Aupr, Examples) {
  EXPECT_EQ(Aupr(V{0.8, 0.9}, V{0.1, 0.2}), 1.0);
  numerics::Rng rng(5);
  V pos, neg;
  for (int i = 0; i < 10000; ++i) (rng.Bernoulli(0.3) ? pos : neg).push_back(rng.Uniform());
  const Real pi = static_cast<Real>(pos.size()) / 10000.0;
  EXPECT_NEAR(Aupr(pos, neg), pi, 0.05);
}

V RandomScores(numerics::Rng& rng, std::size_t n, bool ties) {
  V out(n);
  for (auto& s : out) s = ties ? static_cast<Real>(rng.UniformInt(5)) : rng.Normal();
  return out;
}

TEST(MetricOracles, MatchBruteForce) {
  numerics::Rng rng(2026);
  for (int t = 0; t < 200; ++t) {
    const bool ties = t % 2 == 0;
    const V pos = RandomScores(rng, 1 + rng.UniformInt(32), ties);
    const V neg = RandomScores(rng, 1 + rng.UniformInt(32), ties);
    const auto [num, den] = testing::AurocPairwise(pos, neg);
    EXPECT_EQ(Auroc(pos, neg), static_cast<Real>(num) / static_cast<Real>(den));
    EXPECT_NEAR(Aupr(pos, neg), testing::AuprSweep(pos, neg), 1e-12);
    EXPECT_NEAR(FprAtTpr(neg, pos), testing::FprSweep(neg, pos, 0.95), 1e-12);
    EXPECT_NEAR(FprAtTpr(neg, pos, 0.5), testing::FprSweep(neg, pos, 0.5), 1e-12);

    const V conf = RandomScores(rng, 1 + rng.UniformInt(64), ties);
    std::vector<bool> correct(conf.size());
    for (std::size_t i = 0; i < conf.size(); ++i) correct[i] = rng.Bernoulli(0.7);
    EXPECT_NEAR(Aurc(conf, correct), testing::AurcPrefix(conf, correct), 1e-12);
  }
}

TEST(MetricProperties, SymmetryMonotoneAndPermutation) {
  numerics::Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const V pos = RandomScores(rng, 1 + rng.UniformInt(40), false);
    const V neg = RandomScores(rng, 1 + rng.UniformInt(40), false);
    EXPECT_NEAR(Auroc(pos, neg) + Auroc(neg, pos), 1.0, 1e-15);

    V conf = RandomScores(rng, 1 + rng.UniformInt(60), false);
    std::vector<bool> correct(conf.size());
    for (std::size_t i = 0; i < conf.size(); ++i) correct[i] = rng.Bernoulli(0.6);
    V squashed;
    for (Real c : conf) squashed.push_back(std::tanh(c) * 3 + 1);
    EXPECT_EQ(Aurc(squashed, correct), Aurc(conf, correct));

    V pp = pos, nn = neg;
    rng.Shuffle(pp);
    rng.Shuffle(nn);
    EXPECT_EQ(Auroc(pp, nn), Auroc(pos, neg));
    EXPECT_EQ(Aupr(pp, nn), Aupr(pos, neg));
    EXPECT_EQ(FprAtTpr(nn, pp), FprAtTpr(neg, pos));
    std::vector<std::size_t> perm = rng.Permutation(conf.size());
    V pc;
    std::vector<bool> pk;
    for (std::size_t i : perm) {
      pc.push_back(conf[i]);
      pk.push_back(correct[i]);
    }
    EXPECT_EQ(Aurc(pc, pk), Aurc(conf, correct));
  }
}

TEST(Curves, EndPoints) {
  const auto rc = RiskCoverageCurve(V{0.9, 0.8}, {true, false});
  ASSERT_EQ(rc.size(), 2u);
  EXPECT_EQ(rc[1].x, 1.0);
  EXPECT_EQ(rc[1].y, 0.5);
  const auto roc = RocCurve(V{0.5, 0.9}, V{0.1, 0.8});
  EXPECT_EQ(roc.front().x, 0.0);
  EXPECT_EQ(roc.back().x, 1.0);
  EXPECT_EQ(roc.back().y, 1.0);
}

TEST(Baseline, ScoreOrientation) {
  const BaselineScores s = ScoreLogits(DenseMatrix{{10, 0, 0}, {1, 0, 0}, {0, 0, 0}, {3, 3, 3}});
  EXPECT_LT(s.max_logit[0], s.max_logit[1]);
  EXPECT_LT(s.energy[0], s.energy[1]);
  EXPECT_NEAR(s.energy[2], -std::log(3.0), 1e-15);
  EXPECT_NEAR(s.energy[3], -std::log(3.0) - 3.0, 1e-14);
  EXPECT_NEAR(s.energy[3], s.energy[2] - 3.0, 1e-14);
  EXPECT_EQ(s.prediction[0], 0u);
  EXPECT_EQ(s.prediction[3], 0u);
}

TEST(Baseline, GcnLearnsPpm6) {
  const graph::Graph g = graph::GeneratePlantedPartition(graph::Ppm6Params());
  const auto split = graph::MakeSplit(g, {4, 5}, 1);
  const auto norm = graph::NormalizeAdjacency(g);
  const DenseMatrix logits = TrainBaselineGcn(g, norm, split, {.epochs = 100, .seed = 1});
  EvalReport r;
  AddBaselines(r, ScoreLogits(logits), g, split);
  EXPECT_GT(r.baselines.at("energy").acc, 0.9);
  EXPECT_TRUE(r.baselines.at("energy").auroc.has_value());
}

evidential::NodeScores OracleScores(const graph::Graph& g, const graph::SplitSpec& split) {
  const std::size_t n = g.num_nodes(), k = split.num_known();
  evidential::NodeScores s;
  s.probability = DenseMatrix(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto known = split.KnownIndex(g.labels[i]);
    s.prediction.push_back(known.value_or(0));
    s.dissonance.push_back(0.0);
    s.vacuity.push_back(known ? 0.1 : 0.9);
  }
  return s;
}

TEST(Evaluate, PerfectOracleModel) {
  const graph::Graph g = graph::GeneratePlantedPartition(graph::Ppm6Params());
  const auto split = graph::MakeSplit(g, {4, 5}, 3);
  const EvalReport r = Evaluate(OracleScores(g, split), g, split);
  EXPECT_EQ(r.evinet.acc, 1.0);
  EXPECT_EQ(r.evinet.aurc, 0.0);
  EXPECT_EQ(*r.evinet.fpr95, 0.0);
  EXPECT_EQ(*r.evinet.auroc, 1.0);
  EXPECT_EQ(*r.evinet.aupr, 1.0);
  EXPECT_FALSE(r.evinet.md_auroc.has_value());

  graph::SplitSpec no_ood = split;
  no_ood.ood_test.clear();
  const EvalReport r2 = Evaluate(OracleScores(g, no_ood), g, no_ood);
  EXPECT_FALSE(r2.evinet.auroc.has_value());
  EXPECT_EQ(MetricMap(r2.evinet).count("fpr95"), 0u);
}

TEST(Aggregate, MeanAndPopulationStd) {
  std::vector<EvalReport> reports(5);
  const Real acc[5] = {0.9, 0.92, 0.88, 0.95, 0.91};
  for (int s = 0; s < 5; ++s) {
    reports[s].seed = s;
    reports[s].evinet.acc = acc[s];
    reports[s].evinet.aurc = 0.01 * s;
    reports[s].evinet.auroc = 0.9 + 0.01 * s;
  }
  const Aggregate agg = AggregateReports(reports);
  Real mean = 0.0;
  for (Real a : acc) mean += a / 5;
  Real var = 0.0;
  for (Real a : acc) var += (a - mean) * (a - mean) / 5;
  EXPECT_NEAR(agg.at("evinet").at("acc").mean, mean, 1e-15);
  EXPECT_NEAR(agg.at("evinet").at("acc").std, std::sqrt(var), 1e-15);
  EXPECT_NEAR(agg.at("evinet").at("aurc_x1000").mean, 20.0, 1e-12);
  EXPECT_EQ(agg.at("evinet").count("fpr95"), 0u);

  const Aggregate one = AggregateReports({reports[2]});
  for (const auto& [k, v] : one.at("evinet")) EXPECT_EQ(v.std, 0.0) << k;

  const auto j = nlohmann::json::parse(ReportsToJson(reports, agg));
  EXPECT_EQ(j["runs"].size(), 5u);
  EXPECT_EQ(j["num_seeds"], 5);
  const std::string table = AggregateTableCsv(agg);
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "method,acc_pct_mean,acc_pct_std,aurc_x1000_mean,aurc_x1000_std,fpr95_pct_mean,"
            "fpr95_pct_std,auroc_pct_mean,auroc_pct_std,aupr_pct_mean,aupr_pct_std");
}

}  // namespace
}  // namespace evinet::eval
