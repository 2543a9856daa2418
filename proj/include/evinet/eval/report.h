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

#ifndef EVINET_EVAL_REPORT_H_
#define EVINET_EVAL_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evinet/eval/baseline.h"
#include "evinet/eval/metrics.h"
#include "evinet/evidential/scores.h"
#include "evinet/graph/graph.h"
#include "evinet/graph/split.h"

namespace evinet::eval {

// Metrics of one scoring method on one split.
struct MethodMetrics {
  Real acc = 0.0;
  // Misclassification detection on ID test.
  Real aurc = 0.0;
  std::optional<Real> md_auroc;  // positives: misclassified
  std::optional<Real> md_aupr;
  // OOD detection, ID test vs OOD test; absent without OOD nodes.
  std::optional<Real> fpr95;
  std::optional<Real> auroc;
  std::optional<Real> aupr;
};

struct EvalReport {
  std::uint64_t seed = 0;
  std::string config_hash;
  Real wall_seconds = 0.0;
  MethodMetrics evinet;
  std::map<std::string, MethodMetrics> baselines;  // "maxlogit", "energy"

  // Per-task score arrays (ID test order, then OOD test order).
  std::vector<Real> id_dissonance;
  std::vector<Real> id_vacuity;
  std::vector<bool> id_correct;
  std::vector<Real> ood_vacuity;
};

// Scores every known-class test node and OOD test node.
EvalReport Evaluate(const evidential::NodeScores& scores, const graph::Graph& g,
                    const graph::SplitSpec& split);

// Adds the MaxLogit and Energy columns from baseline GCN scores.
void AddBaselines(EvalReport& report, const BaselineScores& scores,
                  const graph::Graph& g, const graph::SplitSpec& split);

struct MeanStd {
  Real mean = 0.0;
  Real std = 0.0;  // population standard deviation
};

// method -> metric name -> mean/std over reports. A metric is aggregated
// only when every report carries it.
using Aggregate = std::map<std::string, std::map<std::string, MeanStd>>;
Aggregate AggregateReports(const std::vector<EvalReport>& reports);

// Flattened metric map of one method; AURC also appears as aurc_x1000.
std::map<std::string, Real> MetricMap(const MethodMetrics& m);

std::string ReportsToJson(const std::vector<EvalReport>& reports,
                          const Aggregate& aggregate);
// One row per method: mean and std of acc, aurc x1000, fpr95, auroc, aupr,
// percentages except AURC.
std::string AggregateTableCsv(const Aggregate& aggregate);
// curve,seed,x,y rows for risk-coverage (EviNet dissonance) and ROC
// (EviNet vacuity).
std::string CurvesCsv(const std::vector<EvalReport>& reports);

}  // namespace evinet::eval

#endif  // EVINET_EVAL_REPORT_H_
