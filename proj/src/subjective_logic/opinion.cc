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

#include "evinet/subjective_logic/opinion.h"

#include <cmath>
#include <string>

namespace evinet::sl {

MultinomialOpinion MultinomialOpinion::Uniform(std::vector<Real> evidence,
                                               Real prior_weight) {
  MultinomialOpinion op;
  const std::size_t k = evidence.size();
  op.evidence = std::move(evidence);
  op.prior_weight = prior_weight;
  op.base_rates.assign(k, k ? 1.0 / static_cast<Real>(k) : 0.0);
  return op;
}

Real MultinomialOpinion::strength() const {
  Real s = prior_weight;
  for (Real e : evidence) s += e;
  return s;
}

void MultinomialOpinion::Validate() const {
  if (evidence.empty()) throw OpinionError("opinion needs at least one class");
  if (base_rates.size() != evidence.size())
    throw OpinionError("opinion has " + std::to_string(evidence.size()) +
                       " evidence entries but " +
                       std::to_string(base_rates.size()) + " base rates");
  if (!(prior_weight > 0.0) || !std::isfinite(prior_weight))
    throw OpinionError("prior weight must be positive and finite");
  Real total = 0.0;
  for (std::size_t k = 0; k < evidence.size(); ++k) {
    if (!(evidence[k] >= 0.0) || !std::isfinite(evidence[k]))
      throw OpinionError("evidence must be nonnegative and finite");
    if (!(base_rates[k] >= 0.0))
      throw OpinionError("base rates must be nonnegative");
    total += base_rates[k];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw OpinionError("base rates must sum to 1");
}

OpinionView ToView(const MultinomialOpinion& op) {
  op.Validate();
  OpinionView v;
  v.strength = op.strength();
  v.belief.resize(op.num_classes());
  for (std::size_t k = 0; k < op.num_classes(); ++k)
    v.belief[k] = op.evidence[k] / v.strength;
  v.uncertainty = op.prior_weight / v.strength;
  return v;
}

Real Vacuity(const MultinomialOpinion& op) {
  op.Validate();
  return op.prior_weight / op.strength();
}

Real Balance(Real b_j, Real b_i) {
  const Real total = b_j + b_i;
  if (total == 0.0) return 0.0;
  return 1.0 - std::abs(b_j - b_i) / total;
}

Real DissonanceOfBelief(std::span<const Real> belief) {
  Real total = 0.0;
  for (Real b : belief) total += b;
  Real result = 0.0;
  for (std::size_t i = 0; i < belief.size(); ++i) {
    if (belief[i] == 0.0) continue;
    const Real others = total - belief[i];
    if (!(others > 0.0)) continue;
    Real num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < belief.size(); ++j) {
      if (j == i) continue;
      num += belief[j] * Balance(belief[j], belief[i]);
      den += belief[j];
    }
    if (den > 0.0) result += belief[i] * num / den;
  }
  return result;
}

Real Dissonance(const MultinomialOpinion& op) {
  return DissonanceOfBelief(ToView(op).belief);
}

std::vector<Real> ProjectedProbability(const MultinomialOpinion& op) {
  const OpinionView v = ToView(op);
  std::vector<Real> p(op.num_classes());
  for (std::size_t k = 0; k < p.size(); ++k)
    p[k] = v.belief[k] + op.base_rates[k] * v.uncertainty;
  return p;
}

std::vector<Real> ExpectedProbability(const MultinomialOpinion& op) {
  op.Validate();
  std::vector<Real> xi(op.num_classes());
  Real total = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    xi[k] = op.evidence[k] + op.base_rates[k] * op.prior_weight;
    total += xi[k];
  }
  for (Real& x : xi) x /= total;
  return xi;
}

BatchScores ScoreBatch(const numerics::DenseMatrix& evidence,
                       const numerics::DenseMatrix& prior_weight) {
  numerics::RequireShape(
      prior_weight.rows() == evidence.rows() && prior_weight.cols() == 1,
      "ScoreBatch: prior weight must be n x 1");
  const std::size_t n = evidence.rows(), k = evidence.cols();
  BatchScores out;
  out.vacuity.resize(n);
  out.dissonance.resize(n);
  out.probability = numerics::DenseMatrix(n, k);
  std::vector<Real> belief(k);
  for (std::size_t i = 0; i < n; ++i) {
    const MultinomialOpinion op =
        MultinomialOpinion::Uniform({evidence.row(i).begin(), evidence.row(i).end()},
                                    prior_weight(i, 0));
    const OpinionView v = ToView(op);
    out.vacuity[i] = v.uncertainty;
    out.dissonance[i] = DissonanceOfBelief(v.belief);
    for (std::size_t c = 0; c < k; ++c)
      out.probability(i, c) = v.belief[c] + op.base_rates[c] * v.uncertainty;
  }
  return out;
}

}  // namespace evinet::sl
