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

#include "evinet/graph/graph.h"

#include <algorithm>
#include <cmath>

namespace evinet::graph {

std::vector<Edge> Graph::EdgeList() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  const auto& off = adjacency.offsets();
  const auto& idx = adjacency.indices();
  for (std::size_t u = 0; u < adjacency.rows(); ++u)
    for (std::size_t p = off[u]; p < off[u + 1]; ++p)
      if (u < idx[p]) edges.emplace_back(u, idx[p]);
  return edges;
}

void Graph::Validate() const {
  const std::size_t n = num_nodes();
  if (adjacency.rows() != n || adjacency.cols() != n)
    throw GraphError("graph '" + name + "': adjacency is not " +
                     std::to_string(n) + "x" + std::to_string(n));
  if (features.rows() != n)
    throw GraphError("graph '" + name + "': features have " +
                     std::to_string(features.rows()) + " rows, expected " +
                     std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (labels[i] >= num_classes)
      throw GraphError("graph '" + name + "': label " +
                       std::to_string(labels[i]) + " of node " +
                       std::to_string(i) + " outside 0.." +
                       std::to_string(num_classes) + "-1");
  if (!adjacency.IsSymmetric())
    throw GraphError("graph '" + name + "': adjacency not symmetric");
  for (std::size_t i = 0; i < n; ++i)
    if (adjacency.At(i, i) != 0.0)
      throw GraphError("graph '" + name + "': self-loop stored at node " +
                       std::to_string(i));
  if (!features.AllFinite())
    throw GraphError("graph '" + name + "': non-finite feature value");
}

Graph MakeGraph(std::string name, std::size_t num_nodes,
                const std::vector<Edge>& edges, DenseMatrix features,
                std::vector<std::size_t> labels, std::size_t num_classes) {
  std::vector<Edge> both;
  both.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes)
      throw GraphError("edge (" + std::to_string(u) + ", " +
                       std::to_string(v) + ") out of range for " +
                       std::to_string(num_nodes) + " nodes");
    if (u == v) continue;
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());

  std::vector<std::size_t> offsets(num_nodes + 1, 0), indices;
  indices.reserve(both.size());
  for (const auto& [u, v] : both) {
    ++offsets[u + 1];
    indices.push_back(v);
  }
  for (std::size_t i = 0; i < num_nodes; ++i) offsets[i + 1] += offsets[i];
  std::vector<Real> values(indices.size(), 1.0);

  Graph g{std::move(name),
          SparseMatrix(num_nodes, num_nodes, std::move(offsets),
                       std::move(indices), std::move(values)),
          std::move(features), std::move(labels), num_classes};
  if (g.labels.size() != num_nodes)
    throw GraphError("graph '" + g.name + "': " +
                     std::to_string(g.labels.size()) + " labels for " +
                     std::to_string(num_nodes) + " nodes");
  g.Validate();
  return g;
}

void ZScoreColumns(DenseMatrix& features) {
  const std::size_t n = features.rows(), f = features.cols();
  if (n == 0) return;
  for (std::size_t c = 0; c < f; ++c) {
    Real mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += features(r, c);
    mean /= static_cast<Real>(n);
    Real var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const Real d = features(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<Real>(n);
    const Real scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    for (std::size_t r = 0; r < n; ++r)
      features(r, c) = (features(r, c) - mean) * scale;
  }
}

}  // namespace evinet::graph
