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

#ifndef EVINET_GRAPH_GRAPH_H_
#define EVINET_GRAPH_GRAPH_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evinet/numerics/dense_matrix.h"
#include "evinet/numerics/sparse_matrix.h"

namespace evinet::graph {

using numerics::DenseMatrix;
using numerics::Real;
using numerics::SparseMatrix;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected attributed graph with node labels. The adjacency is symmetric
// with unit weights and no stored self-loops.
struct Graph {
  std::string name;
  SparseMatrix adjacency;
  DenseMatrix features;
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;

  std::size_t num_nodes() const { return labels.size(); }
  std::size_t feature_dim() const { return features.cols(); }
  // Undirected edge count.
  std::size_t num_edges() const { return adjacency.nnz() / 2; }
  // Each undirected edge once, as (u, v) with u < v, sorted.
  std::vector<Edge> EdgeList() const;

  // Throws GraphError if any invariant is broken.
  void Validate() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Symmetrizes `edges`, drops self-loops and duplicates. Throws GraphError
// on an out-of-range endpoint or label.
Graph MakeGraph(std::string name, std::size_t num_nodes,
                const std::vector<Edge>& edges, DenseMatrix features,
                std::vector<std::size_t> labels, std::size_t num_classes);

// Per-column z-score; columns with zero variance are only centered.
void ZScoreColumns(DenseMatrix& features);

}  // namespace evinet::graph

#endif  // EVINET_GRAPH_GRAPH_H_
