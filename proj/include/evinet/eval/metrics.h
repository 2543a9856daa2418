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

#ifndef EVINET_EVAL_METRICS_H_
#define EVINET_EVAL_METRICS_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "evinet/numerics/dense_matrix.h"

namespace evinet::eval {

using numerics::Real;

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fraction of positions where predictions equal labels. Throws on empty or
// mismatched input.
Real Accuracy(std::span<const std::size_t> predictions,
              std::span<const std::size_t> labels);

// Area under the risk-coverage curve: samples sorted by confidence
// descending (ties keep input order), mean over i of errors(top i) / i.
Real Aurc(std::span<const Real> confidence, const std::vector<bool>& correct);

// P(pos > neg) + P(pos == neg) / 2.
Real Auroc(std::span<const Real> positive, std::span<const Real> negative);

// ID samples are accepted when their anomaly score is <= t; t is the
// smallest ID score whose acceptance rate reaches tpr_target. Returns the
// fraction of OOD scores that are also <= t.
Real FprAtTpr(std::span<const Real> id_scores, std::span<const Real> ood_scores,
              Real tpr_target = 0.95);

// Trapezoidal area under precision-recall, predicting positive when
// score >= t for every distinct score t, starting from (recall 0,
// precision 1).
Real Aupr(std::span<const Real> positive, std::span<const Real> negative);

struct CurvePoint {
  Real x;
  Real y;
};
// (coverage, risk) for every prefix.
std::vector<CurvePoint> RiskCoverageCurve(std::span<const Real> confidence,
                                          const std::vector<bool>& correct);
// (fpr, tpr) at every distinct threshold, from (0, 0) to (1, 1).
std::vector<CurvePoint> RocCurve(std::span<const Real> positive,
                                 std::span<const Real> negative);

}  // namespace evinet::eval

#endif  // EVINET_EVAL_METRICS_H_
