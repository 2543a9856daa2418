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

#include "evinet/graph/normalize.h"

#include <cmath>

namespace evinet::graph {

NormalizedAdjacency NormalizeAdjacency(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const auto& off = g.adjacency.offsets();
  const auto& idx = g.adjacency.indices();
  const auto& val = g.adjacency.values();

  std::vector<Real> degree(n, 1.0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t p = off[u]; p < off[u + 1]; ++p) degree[u] += val[p];
  std::vector<Real> inv_sqrt(n);
  for (std::size_t u = 0; u < n; ++u) inv_sqrt[u] = 1.0 / std::sqrt(degree[u]);

  // Merge the diagonal into each sorted row.
  std::vector<std::size_t> offsets(n + 1, 0), indices;
  std::vector<Real> values;
  indices.reserve(g.adjacency.nnz() + n);
  values.reserve(g.adjacency.nnz() + n);
  for (std::size_t u = 0; u < n; ++u) {
    bool diagonal_done = false;
    for (std::size_t p = off[u]; p < off[u + 1]; ++p) {
      const std::size_t v = idx[p];
      if (!diagonal_done && v > u) {
        indices.push_back(u);
        values.push_back(inv_sqrt[u] * inv_sqrt[u]);
        diagonal_done = true;
      }
      indices.push_back(v);
      values.push_back(val[p] * inv_sqrt[u] * inv_sqrt[v]);
    }
    if (!diagonal_done) {
      indices.push_back(u);
      values.push_back(inv_sqrt[u] * inv_sqrt[u]);
    }
    offsets[u + 1] = indices.size();
  }
  return {SparseMatrix(n, n, std::move(offsets), std::move(indices),
                       std::move(values)),
          std::move(degree)};
}

}  // namespace evinet::graph
