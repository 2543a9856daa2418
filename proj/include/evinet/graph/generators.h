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

#ifndef EVINET_GRAPH_GENERATORS_H_
#define EVINET_GRAPH_GENERATORS_H_

#include <cstdint>

#include "evinet/graph/graph.h"

namespace evinet::graph {

// G(n, p): each unordered pair is an edge with probability `density`,
// sampled by geometric skipping so the cost is O(n + m). Features are
// standard normal; labels are uniform over `num_classes` and carry no
// signal.
Graph GenerateErdosRenyi(std::size_t n, Real density, std::size_t feature_dim,
                         std::uint64_t seed, std::size_t num_classes = 5);

struct PlantedPartitionParams {
  std::size_t blocks = 6;
  std::size_t nodes_per_block = 200;
  Real p_in = 0.05;
  Real p_out = 0.002;
  std::size_t feature_dim = 16;
  // Norm of every block's feature mean.
  Real mean_separation = 3.0;
  std::uint64_t seed = 6;
};

// Stochastic block model with Gaussian features around a random per-block
// mean direction. Labels are block ids; node i lives in block
// i / nodes_per_block.
Graph GeneratePlantedPartition(const PlantedPartitionParams& params);

// The frozen desk-scale reference dataset: 6 blocks x 200 nodes,
// p_in 0.05, p_out 0.002, 16 features, separation 3, seed 6.
PlantedPartitionParams Ppm6Params();

}  // namespace evinet::graph

#endif  // EVINET_GRAPH_GENERATORS_H_
