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

#include "evinet/numerics/random.h"
#include "evinet/subjective_logic/opinion.h"
#include "gtest/gtest.h"

namespace evinet::sl {
namespace {

MultinomialOpinion Op(std::vector<Real> e, Real w) {
  return MultinomialOpinion::Uniform(std::move(e), w);
}

void ExpectVec(const std::vector<Real>& got, const std::vector<Real>& want,
               Real tol = 1e-15) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << i;
}

// Literal transcription of the dissonance sum with rational-free loops.
Real DissonanceOracle(const std::vector<Real>& b) {
  Real out = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Real num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j == i) continue;
      const Real bal =
          (b[i] + b[j]) > 0 ? 1.0 - std::abs(b[j] - b[i]) / (b[j] + b[i]) : 0.0;
      num += b[j] * bal;
      den += b[j];
    }
    if (den != 0.0) out += b[i] * num / den;
  }
  return out;
}

MultinomialOpinion RandomOpinion(numerics::Rng& rng) {
  const std::size_t k = 2 + rng.UniformInt(8);
  std::vector<Real> e(k);
  for (auto& v : e) v = rng.Bernoulli(0.2) ? 0.0 : rng.Uniform(0.0, 50.0);
  MultinomialOpinion op = Op(e, rng.Uniform(0.01, 20.0));
  if (rng.Bernoulli(0.5)) {
    Real total = 0.0;
    for (auto& a : op.base_rates) total += (a = rng.Uniform(0.01, 1.0));
    for (auto& a : op.base_rates) a /= total;
  }
  return op;
}

TEST(ToView, Examples) {
  auto v = ToView(Op({0, 0}, 2));
  ExpectVec(v.belief, {0, 0});
  EXPECT_EQ(v.uncertainty, 1.0);
  v = ToView(Op({2, 2}, 2));
  ExpectVec(v.belief, {1.0 / 3, 1.0 / 3});
  EXPECT_NEAR(v.uncertainty, 1.0 / 3, 1e-15);
  EXPECT_EQ(v.strength, 6.0);
  v = ToView(Op({4, 0}, 2));
  ExpectVec(v.belief, {2.0 / 3, 0});
  EXPECT_NEAR(v.uncertainty, 1.0 / 3, 1e-15);
}

TEST(Vacuity, Examples) {
  EXPECT_EQ(Vacuity(Op({0, 0}, 0.3)), 1.0);
  EXPECT_EQ(Vacuity(Op({0, 0}, 17)), 1.0);
  EXPECT_NEAR(Vacuity(Op({3, 1}, 1)), 0.2, 1e-15);
  EXPECT_NEAR(Vacuity(Op({8, 0}, 2)), 0.2, 1e-15);
}

TEST(Balance, Examples) {
  EXPECT_EQ(Balance(0.3, 0.3), 1.0);
  EXPECT_EQ(Balance(0.0, 0.4), 0.0);
  EXPECT_EQ(Balance(0.25, 0.75), 0.5);
  EXPECT_EQ(Balance(0.0, 0.0), 0.0);
}

TEST(Dissonance, Examples) {
  EXPECT_EQ(Dissonance(Op({4, 0}, 2)), 0.0);
  EXPECT_NEAR(Dissonance(Op({2, 2}, 2)), 2.0 / 3, 1e-15);
  EXPECT_EQ(Dissonance(Op({0, 0}, 1)), 0.0);
}

TEST(ProjectedProbability, Examples) {
  ExpectVec(ProjectedProbability(Op({0, 0}, 1)), {0.5, 0.5});
  ExpectVec(ProjectedProbability(Op({2, 2}, 2)), {0.5, 0.5});
  ExpectVec(ProjectedProbability(Op({4, 0}, 2)), {5.0 / 6, 1.0 / 6});
}

TEST(ExpectedProbability, Examples) {
  ExpectVec(ExpectedProbability(Op({0, 0}, 1)), {0.5, 0.5});
  ExpectVec(ExpectedProbability(Op({2, 2}, 2)), {0.5, 0.5});
  ExpectVec(ExpectedProbability(Op({4, 0}, 2)), {5.0 / 6, 1.0 / 6});
  ExpectVec(ExpectedProbability(Op({1, 0, 0}, 3)), {0.5, 0.25, 0.25});
  MultinomialOpinion op = Op({0, 0, 0}, 2);
  op.base_rates = {0.2, 0.3, 0.5};
  ExpectVec(ExpectedProbability(op), op.base_rates);
}

TEST(Opinion, ValidationErrors) {
  EXPECT_THROW(Vacuity(Op({-1, 1}, 1)), OpinionError);
  EXPECT_THROW(Vacuity(Op({1, 1}, 0)), OpinionError);
  MultinomialOpinion op = Op({1, 1}, 1);
  op.base_rates = {0.7, 0.7};
  EXPECT_THROW(Vacuity(op), OpinionError);
  op.base_rates = {1.0};
  EXPECT_THROW(Vacuity(op), OpinionError);
}

TEST(OpinionProperties, RandomOpinions) {
  numerics::Rng rng(2024);
  for (int t = 0; t < 10000; ++t) {
    const MultinomialOpinion op = RandomOpinion(rng);
    const OpinionView v = ToView(op);
    Real mass = v.uncertainty;
    for (Real b : v.belief) mass += b;
    EXPECT_NEAR(mass, 1.0, 1e-12);

    const auto p = ProjectedProbability(op);
    const auto q = ExpectedProbability(op);
    Real psum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      psum += p[k];
      EXPECT_NEAR(p[k], q[k], 1e-12);
    }
    EXPECT_NEAR(psum, 1.0, 1e-12);

    const Real diss = Dissonance(op);
    EXPECT_GE(diss, 0.0);
    EXPECT_LE(diss, 1.0);
    EXPECT_NEAR(diss, DissonanceOracle(v.belief), 1e-12);
    std::size_t positive = 0;
    for (Real e : op.evidence) positive += e > 0.0;
    if (positive <= 1) {
      EXPECT_EQ(diss, 0.0);
    }

    MultinomialOpinion more = op;
    more.evidence[rng.UniformInt(more.num_classes())] += rng.Uniform(0.1, 5.0);
    EXPECT_LT(Vacuity(more), Vacuity(op));

    MultinomialOpinion scaled = op;
    const Real c = rng.Uniform(0.1, 10.0);
    for (auto& e : scaled.evidence) e *= c;
    scaled.prior_weight *= c;
    const OpinionView sv = ToView(scaled);
    EXPECT_NEAR(sv.uncertainty, v.uncertainty, 1e-12);
    ExpectVec(sv.belief, v.belief, 1e-12);
    ExpectVec(ProjectedProbability(scaled), p, 1e-12);
    EXPECT_NEAR(Dissonance(scaled), diss, 1e-12);
  }
}

TEST(ScoreBatch, MatchesScalarFunctions) {
  numerics::DenseMatrix e{{2, 2}, {4, 0}, {0, 0}};
  numerics::DenseMatrix w{{2}, {2}, {1}};
  const BatchScores s = ScoreBatch(e, w);
  ExpectVec(s.vacuity, {1.0 / 3, 1.0 / 3, 1.0});
  ExpectVec(s.dissonance, {2.0 / 3, 0.0, 0.0});
  EXPECT_NEAR(s.probability(1, 0), 5.0 / 6, 1e-15);
  EXPECT_NEAR(s.probability(2, 1), 0.5, 1e-15);
  EXPECT_THROW(ScoreBatch(e, numerics::DenseMatrix(2, 1, 1.0)), numerics::ShapeError);
}

}  // namespace
}  // namespace evinet::sl
