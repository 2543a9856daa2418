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

#include "evinet/training/trainer.h"

#include <chrono>
#include <cmath>

#include "evinet/beta_reasoning/beta_loss.h"
#include "evinet/common/file_util.h"
#include "evinet/eval/metrics.h"
#include "evinet/evidential/dirichlet_loss.h"

namespace evinet::training {
namespace {

using numerics::Tape;
using numerics::Var;

numerics::AdamOptions MakeAdam(const TrainConfig& c, Real lr) {
  numerics::AdamOptions o;
  o.lr = lr;
  o.beta1 = c.adam_beta1;
  o.beta2 = c.adam_beta2;
  o.eps = c.adam_eps;
  o.weight_decay = c.weight_decay;
  return o;
}

[[noreturn]] void Diverged(const char* phase, std::size_t epoch, Real loss) {
  throw TrainingError(std::string(phase) + " diverged at epoch " + std::to_string(epoch) +
                          " (loss " + FormatReal(loss) + ")",
                      {});
}

std::string Opt(const std::optional<Real>& v) { return v ? FormatReal(*v) : std::string(); }

}  // namespace

numerics::AdamOptions Phase1Adam(const TrainConfig& c) { return MakeAdam(c, c.lr_p1); }
numerics::AdamOptions Phase2Adam(const TrainConfig& c) { return MakeAdam(c, c.lr_p2); }

PhaseResult TrainPhase1(Model& model, const PreparedData& data, const TrainConfig& config,
                        std::size_t epochs, numerics::Adam& adam, numerics::Rng& rng) {
  PhaseResult result;
  if (!model.encoder || epochs == 0) return result;
  const auto params = model.Phase1Parameters();
  beta::EncodeOptions opts;
  opts.training = true;
  opts.dropout = config.dropout_p1;
  opts.rng = &rng;
  opts.bn_momentum = config.bn_momentum;
  opts.bn_eps = config.bn_eps;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    Tape tape;
    Real value;
    try {
      Var nodes = beta::Encode(tape, data.norm.matrix, data.propagated, *model.encoder, opts);
      Var train = numerics::ad::GatherRows(nodes, data.split.train);
      auto classes = beta::BuildClassEmbeddings(train, data.members, *model.disjunction);
      Var loss = beta::BetaLoss(train, data.train_labels, classes, config.gamma);
      value = tape.Value(loss.id())(0, 0);
      if (!std::isfinite(value)) Diverged("phase 1", epoch, value);
      tape.Backward(loss);
    } catch (const std::domain_error& e) {
      throw TrainingError("phase 1 diverged at epoch " + std::to_string(epoch) + ": " +
                              e.what(),
                          {});
    }
    adam.Step(params);
    if (!result.first_loss) result.first_loss = value;
    result.last_loss = value;
  }
  return result;
}

PhaseResult TrainPhase2(Model& model, const PreparedData& data, const TrainConfig& config,
                        std::size_t epochs, numerics::Adam& adam, numerics::Rng& rng) {
  PhaseResult result;
  if (epochs == 0) return result;
  const auto params = model.Phase2Parameters();
  const RoundContext ctx = BuildRoundContext(model, data, config.bn_eps);
  evidential::ForwardOptions opts;
  opts.training = true;
  opts.dropout = config.dropout_p2;
  opts.rng = &rng;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    Tape tape;
    Real value;
    try {
      auto ev = evidential::EvidenceForward(tape, ctx.inputs, model.heads, opts);
      Var loss = evidential::DirichletLoss(ev.evidence, ev.prior_weight, data.split.train,
                                           data.train_labels);
      value = tape.Value(loss.id())(0, 0);
      if (!std::isfinite(value)) Diverged("phase 2", epoch, value);
      tape.Backward(loss);
    } catch (const std::domain_error& e) {
      throw TrainingError("phase 2 diverged at epoch " + std::to_string(epoch) + ": " +
                              e.what(),
                          {});
    }
    adam.Step(params);
    if (!result.first_loss) result.first_loss = value;
    result.last_loss = value;
  }
  return result;
}

Real SelectionScore(Real acc, std::optional<Real> auroc, Real aurc,
                    const TrainConfig& config) {
  Real s = config.selection_acc_weight * acc - config.selection_aurc_weight * aurc;
  if (auroc) s += config.selection_auroc_weight * *auroc;
  return s;
}

ValidationMetrics EvaluateValidation(const evidential::NodeScores& scores,
                                     const PreparedData& data, const TrainConfig& config) {
  ValidationMetrics m;
  const auto& val = data.split.val;
  if (val.empty()) throw TrainingError("validation split is empty", {});
  std::vector<std::size_t> pred;
  std::vector<Real> confidence, id_vac;
  std::vector<bool> correct;
  for (std::size_t j = 0; j < val.size(); ++j) {
    const std::size_t i = val[j];
    pred.push_back(scores.prediction[i]);
    correct.push_back(scores.prediction[i] == data.val_labels[j]);
    confidence.push_back(-scores.dissonance[i]);
    id_vac.push_back(scores.vacuity[i]);
  }
  m.acc = eval::Accuracy(pred, data.val_labels);
  m.aurc = eval::Aurc(confidence, correct);
  if (!data.split.ood_val.empty()) {
    std::vector<Real> ood_vac;
    for (std::size_t i : data.split.ood_val) ood_vac.push_back(scores.vacuity[i]);
    m.auroc = eval::Auroc(ood_vac, id_vac);
  }
  m.selection = SelectionScore(m.acc, m.auroc, m.aurc, config);
  return m;
}

TrainResult TrainAlternating(const PreparedData& data, const TrainConfig& config,
                             const RoundCallback& on_round) {
  config.Validate();
  numerics::Rng root(config.seed);
  numerics::Rng init_rng = root.Fork(1), p1_rng = root.Fork(2), p2_rng = root.Fork(3);
  Model model = Model::Init(data.graph->feature_dim(), data.split.num_known(), config,
                            init_rng);
  numerics::Adam adam1(Phase1Adam(config)), adam2(Phase2Adam(config));
  TrainResult result;
  bool have_best = false;
  for (std::size_t round = 1; round <= config.rounds; ++round) {
    const auto start = std::chrono::steady_clock::now();
    HistoryRow row;
    row.round = round;
    try {
      row.bl_loss = TrainPhase1(model, data, config, config.epochs_p1, adam1, p1_rng).last_loss;
      row.dl_loss = TrainPhase2(model, data, config, config.epochs_p2, adam2, p2_rng).last_loss;
      const Inference inf = Infer(model, data, config.bn_eps);
      const ValidationMetrics vm = EvaluateValidation(inf.scores, data, config);
      row.val_acc = vm.acc;
      row.val_auroc = vm.auroc;
      row.val_aurc = vm.aurc;
      row.selection_score = vm.selection;
      if (!have_best || vm.selection > result.best_metrics.selection) {
        have_best = true;
        result.model = model;
        result.best_round = round;
        result.best_metrics = vm;
      }
    } catch (const TrainingError& e) {
      throw TrainingError("round " + std::to_string(round) + ": " + e.what(),
                          result.history);
    }
    result.history.push_back(row);
    result.round_seconds.push_back(
        std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count());
    if (on_round) on_round(row);
  }
  return result;
}

std::string HistoryCsv(const std::vector<HistoryRow>& rows) {
  std::string out = "round,bl_loss,dl_loss,val_acc,val_auroc,val_aurc,selection_score\n";
  for (const auto& r : rows)
    out += std::to_string(r.round) + "," + Opt(r.bl_loss) + "," + Opt(r.dl_loss) + "," +
           FormatReal(r.val_acc) + "," + Opt(r.val_auroc) + "," + FormatReal(r.val_aurc) +
           "," + FormatReal(r.selection_score) + "\n";
  return out;
}

graph::SplitSpec MakeConfigSplit(const graph::Graph& g, const TrainConfig& config) {
  graph::SplitOptions opts;
  opts.ratios = config.split_ratios;
  opts.ood_val_fraction = config.ood_val_fraction;
  return graph::MakeSplit(g, ResolveOodClasses(config, g.num_classes), config.seed, opts);
}

}  // namespace evinet::training
