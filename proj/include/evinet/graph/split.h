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

#ifndef EVINET_GRAPH_SPLIT_H_
#define EVINET_GRAPH_SPLIT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evinet/graph/graph.h"

namespace evinet::graph {

// Label leave-out split. Whole classes in `ood_classes` are withheld from
// training; the remaining (in-distribution) nodes are split train/val/test.
struct SplitSpec {
  std::vector<std::size_t> id_classes;   // sorted; position = known-class index
  std::vector<std::size_t> ood_classes;  // sorted
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
  std::vector<std::size_t> ood_val;
  std::vector<std::size_t> ood_test;
  std::uint64_t seed = 0;

  std::size_t num_known() const { return id_classes.size(); }
  // Known-class index of an original label, or nullopt for OOD labels.
  std::optional<std::size_t> KnownIndex(std::size_t label) const;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

struct SplitOptions {
  std::array<Real, 3> ratios = {1.0, 1.0, 8.0};
  Real ood_val_fraction = 0.2;
  // Classes with at least this many ID nodes must appear in train.
  std::size_t min_class_size_for_train = 10;
  int max_attempts = 100;
};

// Deterministic for a fixed seed. Throws GraphError when fewer than two ID
// classes remain, an ID class is empty, or no attempt puts every large
// enough class into train.
SplitSpec MakeSplit(const Graph& g, const std::vector<std::size_t>& ood_classes,
                    std::uint64_t seed, const SplitOptions& options = {});

// Checks disjointness, coverage of every ID node and class membership.
void ValidateSplit(const Graph& g, const SplitSpec& split);

std::string SplitToJson(const SplitSpec& split);
SplitSpec SplitFromJson(const std::string& text);
void SaveSplit(const SplitSpec& split, const std::filesystem::path& path);
SplitSpec LoadSplit(const std::filesystem::path& path);

}  // namespace evinet::graph

#endif  // EVINET_GRAPH_SPLIT_H_
