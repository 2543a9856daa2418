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

#ifndef EVINET_SUBJECTIVE_LOGIC_OPINION_H_
#define EVINET_SUBJECTIVE_LOGIC_OPINION_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "evinet/numerics/dense_matrix.h"

namespace evinet::sl {

using numerics::Real;

class OpinionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Multinomial opinion over K classes, parameterized by evidence, prior
// weight W and base rates a.
struct MultinomialOpinion {
  std::vector<Real> evidence;
  Real prior_weight = 1.0;
  std::vector<Real> base_rates;

  // Base rates 1/K.
  static MultinomialOpinion Uniform(std::vector<Real> evidence,
                                    Real prior_weight);

  std::size_t num_classes() const { return evidence.size(); }
  Real strength() const;
  // Throws OpinionError on negative evidence, W <= 0, or base rates that
  // are negative or do not sum to 1.
  void Validate() const;
};

struct OpinionView {
  std::vector<Real> belief;
  Real uncertainty = 1.0;
  Real strength = 0.0;
};

OpinionView ToView(const MultinomialOpinion& op);
Real Vacuity(const MultinomialOpinion& op);

// 1 - |bj - bi| / (bj + bi); 0 when both are 0.
Real Balance(Real b_j, Real b_i);

// Dissonance of a belief mass vector. A class whose competitors carry no
// belief contributes 0.
Real DissonanceOfBelief(std::span<const Real> belief);
Real Dissonance(const MultinomialOpinion& op);

// b_k + a_k u.
std::vector<Real> ProjectedProbability(const MultinomialOpinion& op);
// xi_k / sum(xi) with xi_k = e_k + a_k W.
std::vector<Real> ExpectedProbability(const MultinomialOpinion& op);

// Row-wise scores for a batch: evidence is n x K, prior_weight n x 1,
// base rates uniform.
struct BatchScores {
  std::vector<Real> vacuity;
  std::vector<Real> dissonance;
  numerics::DenseMatrix probability;  // n x K projected probabilities
};
BatchScores ScoreBatch(const numerics::DenseMatrix& evidence,
                       const numerics::DenseMatrix& prior_weight);

}  // namespace evinet::sl

#endif  // EVINET_SUBJECTIVE_LOGIC_OPINION_H_
