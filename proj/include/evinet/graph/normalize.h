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

#ifndef EVINET_GRAPH_NORMALIZE_H_
#define EVINET_GRAPH_NORMALIZE_H_

#include <vector>

#include "evinet/graph/graph.h"

namespace evinet::graph {

// D^{-1/2} (A + I) D^{-1/2}, with D the degree after self-loop insertion.
struct NormalizedAdjacency {
  SparseMatrix matrix;
  std::vector<Real> degrees;
};

NormalizedAdjacency NormalizeAdjacency(const Graph& g);

}  // namespace evinet::graph

#endif  // EVINET_GRAPH_NORMALIZE_H_
