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

#include "evinet/evidential/scores.h"

#include "evinet/common/file_util.h"
#include "evinet/subjective_logic/opinion.h"

namespace evinet::evidential {

NodeScores Score(const NodeOpinionBatch& batch) {
  sl::BatchScores s = sl::ScoreBatch(batch.evidence, batch.prior_weight);
  NodeScores out;
  out.dissonance = std::move(s.dissonance);
  out.vacuity = std::move(s.vacuity);
  out.probability = std::move(s.probability);
  out.prediction.resize(out.probability.rows());
  for (std::size_t i = 0; i < out.probability.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < out.probability.cols(); ++k)
      if (out.probability(i, k) > out.probability(i, best)) best = k;
    out.prediction[i] = best;
  }
  return out;
}

std::string ScoresToCsv(const NodeScores& scores,
                        std::span<const std::size_t> node_ids) {
  numerics::RequireShape(node_ids.size() == scores.prediction.size(),
                         "ScoresToCsv: one node id per scored node");
  std::string out = "node_id,prediction,dissonance,vacuity";
  for (std::size_t k = 0; k < scores.probability.cols(); ++k)
    out += ",p_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    out += std::to_string(node_ids[i]) + ',' + std::to_string(scores.prediction[i]) +
           ',' + FormatReal(scores.dissonance[i]) + ',' + FormatReal(scores.vacuity[i]);
    for (std::size_t k = 0; k < scores.probability.cols(); ++k)
      out += ',' + FormatReal(scores.probability(i, k));
    out += '\n';
  }
  return out;
}

}  // namespace evinet::evidential
