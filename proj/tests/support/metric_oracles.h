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

// Test-only brute-force references for the ranking metrics.

#ifndef EVINET_TESTS_SUPPORT_METRIC_ORACLES_H_
#define EVINET_TESTS_SUPPORT_METRIC_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace evinet::testing {

// Exact rational (2U, 2 * |pos| * |neg|) by pairwise enumeration.
inline std::pair<std::uint64_t, std::uint64_t> AurocPairwise(
    const std::vector<double>& pos, const std::vector<double>& neg) {
  std::uint64_t num = 0;
  for (double p : pos)
    for (double q : neg) num += p > q ? 2 : (p == q ? 1 : 0);
  return {num, 2 * static_cast<std::uint64_t>(pos.size()) * neg.size()};
}

// Each coverage level recomputes its top-i set from scratch.
inline double AurcPrefix(const std::vector<double>& conf, const std::vector<bool>& correct) {
  const std::size_t n = conf.size();
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (conf[k] > conf[j] || (conf[k] == conf[j] && k < j)) ++rank[j];
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t errors = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (rank[j] < i && !correct[j]) ++errors;
    total += static_cast<double>(errors) / static_cast<double>(i);
  }
  return total / static_cast<double>(n);
}

// Tries every observed score as the ID acceptance cutoff.
inline double FprSweep(const std::vector<double>& id, const std::vector<double>& ood,
                       double target) {
  std::set<double> candidates(id.begin(), id.end());
  candidates.insert(ood.begin(), ood.end());
  for (double t : candidates) {
    std::size_t accepted = 0;
    for (double s : id) accepted += s <= t;
    if (static_cast<double>(accepted) / static_cast<double>(id.size()) >= target) {
      std::size_t fp = 0;
      for (double s : ood) fp += s <= t;
      return static_cast<double>(fp) / static_cast<double>(ood.size());
    }
  }
  return 1.0;
}

// Direct counts at every distinct threshold, descending, trapezoid from
// (recall 0, precision 1).
inline double AuprSweep(const std::vector<double>& pos, const std::vector<double>& neg) {
  std::set<double, std::greater<>> thresholds(pos.begin(), pos.end());
  thresholds.insert(neg.begin(), neg.end());
  double prev_r = 0.0, prev_p = 1.0, area = 0.0;
  for (double t : thresholds) {
    std::size_t tp = 0, fp = 0;
    for (double s : pos) tp += s >= t;
    for (double s : neg) fp += s >= t;
    const double r = static_cast<double>(tp) / static_cast<double>(pos.size());
    const double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
    area += (r - prev_r) * (p + prev_p) / 2.0;
    prev_r = r;
    prev_p = p;
  }
  return area;
}

}  // namespace evinet::testing

#endif  // EVINET_TESTS_SUPPORT_METRIC_ORACLES_H_
