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

#include "evinet/graph/generators.h"

#include <cmath>
#include <string>

#include "evinet/numerics/random.h"

namespace evinet::graph {

using numerics::Rng;

Graph GenerateErdosRenyi(std::size_t n, Real density, std::size_t feature_dim,
                         std::uint64_t seed, std::size_t num_classes) {
  if (!(density >= 0.0 && density < 1.0))
    throw GraphError("Erdos-Renyi density must lie in [0, 1)");
  if (num_classes == 0) throw GraphError("Erdos-Renyi needs at least one class");
  Rng root(seed);
  Rng edge_rng = root.Fork(1), feature_rng = root.Fork(2),
      label_rng = root.Fork(3);

  std::vector<Edge> edges;
  if (density > 0.0 && n > 1) {
    edges.reserve(static_cast<std::size_t>(
        density * static_cast<Real>(n) * static_cast<Real>(n - 1) / 2.0 * 1.1));
    const Real log_q = std::log1p(-density);
    // Walk the strictly lower triangle (v, w), w < v, in row-major order.
    std::size_t v = 1;
    long long w = -1;
    while (v < n) {
      const Real r = edge_rng.Uniform();
      w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
      while (v < n && w >= static_cast<long long>(v)) {
        w -= static_cast<long long>(v);
        ++v;
      }
      if (v < n) edges.emplace_back(static_cast<std::size_t>(w), v);
    }
  }
  DenseMatrix features = numerics::RandomNormalMatrix(n, feature_dim, feature_rng);
  std::vector<std::size_t> labels(n);
  for (auto& y : labels) y = static_cast<std::size_t>(label_rng.UniformInt(num_classes));
  return MakeGraph("er_n" + std::to_string(n), n, edges, std::move(features),
                   std::move(labels), num_classes);
}

Graph GeneratePlantedPartition(const PlantedPartitionParams& p) {
  if (!(p.p_in > p.p_out)) throw GraphError("planted partition needs p_in > p_out");
  if (!(p.p_out >= 0.0 && p.p_in <= 1.0))
    throw GraphError("planted partition probabilities must lie in [0, 1]");
  if (!(p.mean_separation >= 0.0))
    throw GraphError("planted partition mean_separation must be >= 0");
  if (p.blocks == 0 || p.nodes_per_block == 0)
    throw GraphError("planted partition needs nonempty blocks");

  const std::size_t n = p.blocks * p.nodes_per_block;
  Rng root(p.seed);
  Rng mean_rng = root.Fork(1), feature_rng = root.Fork(2),
      edge_rng = root.Fork(3);

  DenseMatrix means(p.blocks, p.feature_dim);
  for (std::size_t b = 0; b < p.blocks; ++b) {
    Real norm = 0.0;
    auto row = means.row(b);
    while (norm == 0.0 && p.feature_dim > 0) {
      for (auto& v : row) v = mean_rng.Normal();
      norm = 0.0;
      for (Real v : row) norm += v * v;
      norm = std::sqrt(norm);
    }
    for (auto& v : row) v = norm > 0.0 ? v * p.mean_separation / norm : 0.0;
  }

  DenseMatrix features(n, p.feature_dim);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i / p.nodes_per_block;
    labels[i] = b;
    for (std::size_t f = 0; f < p.feature_dim; ++f)
      features(i, f) = means(b, f) + feature_rng.Normal();
  }

  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool same = labels[u] == labels[v];
      if (edge_rng.Bernoulli(same ? p.p_in : p.p_out)) edges.emplace_back(u, v);
    }
  return MakeGraph("ppm" + std::to_string(p.blocks), n, edges,
                   std::move(features), std::move(labels), p.blocks);
}

PlantedPartitionParams Ppm6Params() { return PlantedPartitionParams{}; }

}  // namespace evinet::graph
