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

// Dataset directory layout:
//
//   edges.tsv     two whitespace-separated 0-based node ids per line,
//                 undirected; duplicates, reversals and self-loops are
//                 tolerated and cleaned on load. '#' starts a comment.
//   features.csv  n rows of F comma-separated reals, or
//   features.bin  n*F little-endian float32 values, row-major
//   labels.csv    n integers in 0..C-1, one per line
//   meta.json     {"n": .., "F": .., "C": .., "name": ..}
//
// features.csv wins when both feature files exist.

#ifndef EVINET_GRAPH_DATASET_IO_H_
#define EVINET_GRAPH_DATASET_IO_H_

#include <filesystem>

#include "evinet/graph/graph.h"

namespace evinet::graph {

struct LoadOptions {
  // Per-column z-score of the features after loading.
  bool zscore_features = true;
};

enum class FeatureFormat { kCsv, kBinary };

Graph LoadDataset(const std::filesystem::path& dir,
                  const LoadOptions& options = {});

// Writes the four files atomically. kBinary stores features as float32, so
// only kCsv round-trips doubles exactly.
void SaveDataset(const Graph& g, const std::filesystem::path& dir,
                 FeatureFormat format = FeatureFormat::kCsv);

}  // namespace evinet::graph

#endif  // EVINET_GRAPH_DATASET_IO_H_
