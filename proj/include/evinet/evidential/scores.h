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

#ifndef EVINET_EVIDENTIAL_SCORES_H_
#define EVINET_EVIDENTIAL_SCORES_H_

#include <span>
#include <string>
#include <vector>

#include "evinet/evidential/heads.h"

namespace evinet::evidential {

struct NodeScores {
  std::vector<std::size_t> prediction;  // argmax p, lowest index on ties
  std::vector<Real> dissonance;
  std::vector<Real> vacuity;
  DenseMatrix probability;  // n x K projected probabilities, base rate 1/K
};

NodeScores Score(const NodeOpinionBatch& batch);

// Columns: node_id, prediction, dissonance, vacuity, p_0..p_{K-1}.
std::string ScoresToCsv(const NodeScores& scores,
                        std::span<const std::size_t> node_ids);

}  // namespace evinet::evidential

#endif  // EVINET_EVIDENTIAL_SCORES_H_
