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

#ifndef EVINET_TRAINING_TRAINER_H_
#define EVINET_TRAINING_TRAINER_H_

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evinet/numerics/adam.h"
#include "evinet/training/model.h"

namespace evinet::training {

struct HistoryRow {
  std::size_t round = 0;
  std::optional<Real> bl_loss;  // last phase-1 epoch; absent when skipped
  std::optional<Real> dl_loss;  // last phase-2 epoch
  Real val_acc = 0.0;
  std::optional<Real> val_auroc;  // absent without OOD validation nodes
  Real val_aurc = 0.0;
  Real selection_score = 0.0;
};

// Carries the rounds completed before the failure.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& what, std::vector<HistoryRow> history)
      : std::runtime_error(what), history(std::move(history)) {}
  std::vector<HistoryRow> history;
};

struct PhaseResult {
  std::optional<Real> first_loss;
  std::optional<Real> last_loss;
};

numerics::AdamOptions Phase1Adam(const TrainConfig& config);
numerics::AdamOptions Phase2Adam(const TrainConfig& config);

// Beta-embedding phase: updates only encoder and disjunction parameters
// (and the batch-norm running moments). Throws TrainingError on a
// non-finite loss.
PhaseResult TrainPhase1(Model& model, const PreparedData& data,
                        const TrainConfig& config, std::size_t epochs,
                        numerics::Adam& adam, numerics::Rng& rng);

// Evidence phase: class regions are frozen for the call; updates only the
// head parameters.
PhaseResult TrainPhase2(Model& model, const PreparedData& data,
                        const TrainConfig& config, std::size_t epochs,
                        numerics::Adam& adam, numerics::Rng& rng);

struct ValidationMetrics {
  Real acc = 0.0;
  std::optional<Real> auroc;
  Real aurc = 0.0;
  Real selection = 0.0;
};

// w_acc * acc + w_auroc * auroc - w_aurc * aurc; the AUROC term is dropped
// when absent.
Real SelectionScore(Real acc, std::optional<Real> auroc, Real aurc,
                    const TrainConfig& config);

ValidationMetrics EvaluateValidation(const evidential::NodeScores& scores,
                                     const PreparedData& data,
                                     const TrainConfig& config);

struct TrainResult {
  Model model;  // snapshot with the best selection score
  std::size_t best_round = 0;
  ValidationMetrics best_metrics;
  std::vector<HistoryRow> history;
  std::vector<Real> round_seconds;
};

using RoundCallback = std::function<void(const HistoryRow&)>;

// Alternates phase 1 and phase 2 for config.rounds rounds, validating after
// each. Optimizer state persists across rounds. Deterministic in
// config.seed.
TrainResult TrainAlternating(const PreparedData& data, const TrainConfig& config,
                             const RoundCallback& on_round = {});

std::string HistoryCsv(const std::vector<HistoryRow>& rows);

// The split used for a config and graph.
graph::SplitSpec MakeConfigSplit(const graph::Graph& g, const TrainConfig& config);

}  // namespace evinet::training

#endif  // EVINET_TRAINING_TRAINER_H_
