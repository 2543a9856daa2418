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

#include "evinet/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace evinet::eval {
namespace {

void RequireNonEmpty(std::size_t n, const char* what) {
  if (n == 0) throw MetricError(std::string(what) + ": empty input");
}

void RequireFinite(std::span<const Real> v, const char* what) {
  for (Real x : v)
    if (!std::isfinite(x)) throw MetricError(std::string(what) + ": non-finite score");
}

std::vector<std::size_t> OrderByConfidence(std::span<const Real> confidence) {
  std::vector<std::size_t> order(confidence.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return confidence[a] > confidence[b];
  });
  return order;
}

// Distinct thresholds in descending order with positive/negative counts at
// or above each one.
struct Sweep {
  std::vector<Real> threshold;
  std::vector<std::size_t> pos_at_or_above;
  std::vector<std::size_t> neg_at_or_above;
};

Sweep DescendingSweep(std::span<const Real> positive, std::span<const Real> negative) {
  std::vector<std::pair<Real, bool>> all;
  all.reserve(positive.size() + negative.size());
  for (Real s : positive) all.emplace_back(s, true);
  for (Real s : negative) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  Sweep sw;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    (all[i].second ? tp : fp) += 1;
    if (i + 1 == all.size() || all[i + 1].first != all[i].first) {
      sw.threshold.push_back(all[i].first);
      sw.pos_at_or_above.push_back(tp);
      sw.neg_at_or_above.push_back(fp);
    }
  }
  return sw;
}

}  // namespace

Real Accuracy(std::span<const std::size_t> predictions,
              std::span<const std::size_t> labels) {
  RequireNonEmpty(labels.size(), "Accuracy");
  if (predictions.size() != labels.size())
    throw MetricError("Accuracy: predictions and labels differ in length");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) hits += predictions[i] == labels[i];
  return static_cast<Real>(hits) / static_cast<Real>(labels.size());
}

Real Aurc(std::span<const Real> confidence, const std::vector<bool>& correct) {
  RequireNonEmpty(confidence.size(), "Aurc");
  if (confidence.size() != correct.size())
    throw MetricError("Aurc: confidence and correctness differ in length");
  RequireFinite(confidence, "Aurc");
  const auto order = OrderByConfidence(confidence);
  std::size_t errors = 0;
  Real total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    errors += !correct[order[i]];
    total += static_cast<Real>(errors) / static_cast<Real>(i + 1);
  }
  return total / static_cast<Real>(order.size());
}

Real Auroc(std::span<const Real> positive, std::span<const Real> negative) {
  RequireNonEmpty(positive.size(), "Auroc positives");
  RequireNonEmpty(negative.size(), "Auroc negatives");
  RequireFinite(positive, "Auroc");
  RequireFinite(negative, "Auroc");
  std::vector<Real> neg(negative.begin(), negative.end());
  std::sort(neg.begin(), neg.end());
  // Twice the Mann-Whitney U statistic, exact in integers.
  std::uint64_t twice_u = 0;
  for (Real p : positive) {
    const auto lo = std::lower_bound(neg.begin(), neg.end(), p);
    const auto hi = std::upper_bound(lo, neg.end(), p);
    twice_u += 2 * static_cast<std::uint64_t>(lo - neg.begin()) +
               static_cast<std::uint64_t>(hi - lo);
  }
  return static_cast<Real>(twice_u) /
         (2.0 * static_cast<Real>(positive.size()) * static_cast<Real>(neg.size()));
}

Real FprAtTpr(std::span<const Real> id_scores, std::span<const Real> ood_scores,
              Real tpr_target) {
  RequireNonEmpty(id_scores.size(), "FprAtTpr ID scores");
  RequireNonEmpty(ood_scores.size(), "FprAtTpr OOD scores");
  RequireFinite(id_scores, "FprAtTpr");
  RequireFinite(ood_scores, "FprAtTpr");
  if (!(tpr_target > 0.0 && tpr_target <= 1.0))
    throw MetricError("FprAtTpr: target must lie in (0, 1]");
  std::vector<Real> id(id_scores.begin(), id_scores.end());
  std::sort(id.begin(), id.end());
  const Real n = static_cast<Real>(id.size());
  std::size_t k = 1;
  while (k < id.size() && static_cast<Real>(k) / n < tpr_target) ++k;
  // Accepting every ID score equal to the cutoff keeps the cutoff smallest.
  const Real cutoff = id[k - 1];
  std::size_t accepted = 0;
  for (Real s : ood_scores) accepted += s <= cutoff;
  return static_cast<Real>(accepted) / static_cast<Real>(ood_scores.size());
}

Real Aupr(std::span<const Real> positive, std::span<const Real> negative) {
  RequireNonEmpty(positive.size(), "Aupr positives");
  RequireNonEmpty(negative.size(), "Aupr negatives");
  RequireFinite(positive, "Aupr");
  RequireFinite(negative, "Aupr");
  const Sweep sw = DescendingSweep(positive, negative);
  const Real p = static_cast<Real>(positive.size());
  Real prev_recall = 0.0, prev_precision = 1.0, area = 0.0;
  for (std::size_t i = 0; i < sw.threshold.size(); ++i) {
    const Real tp = static_cast<Real>(sw.pos_at_or_above[i]);
    const Real fp = static_cast<Real>(sw.neg_at_or_above[i]);
    const Real recall = tp / p;
    const Real precision = tp / (tp + fp);
    area += (recall - prev_recall) * (precision + prev_precision) / 2.0;
    prev_recall = recall;
    prev_precision = precision;
  }
  return area;
}

std::vector<CurvePoint> RiskCoverageCurve(std::span<const Real> confidence,
                                          const std::vector<bool>& correct) {
  RequireNonEmpty(confidence.size(), "RiskCoverageCurve");
  if (confidence.size() != correct.size())
    throw MetricError("RiskCoverageCurve: length mismatch");
  const auto order = OrderByConfidence(confidence);
  std::vector<CurvePoint> out;
  std::size_t errors = 0;
  const Real n = static_cast<Real>(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    errors += !correct[order[i]];
    out.push_back({static_cast<Real>(i + 1) / n,
                   static_cast<Real>(errors) / static_cast<Real>(i + 1)});
  }
  return out;
}

std::vector<CurvePoint> RocCurve(std::span<const Real> positive,
                                 std::span<const Real> negative) {
  RequireNonEmpty(positive.size(), "RocCurve positives");
  RequireNonEmpty(negative.size(), "RocCurve negatives");
  const Sweep sw = DescendingSweep(positive, negative);
  std::vector<CurvePoint> out = {{0.0, 0.0}};
  for (std::size_t i = 0; i < sw.threshold.size(); ++i)
    out.push_back({static_cast<Real>(sw.neg_at_or_above[i]) / static_cast<Real>(negative.size()),
                   static_cast<Real>(sw.pos_at_or_above[i]) / static_cast<Real>(positive.size())});
  return out;
}

}  // namespace evinet::eval
