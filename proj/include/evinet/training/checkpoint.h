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

#ifndef EVINET_TRAINING_CHECKPOINT_H_
#define EVINET_TRAINING_CHECKPOINT_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "evinet/training/model.h"

namespace evinet::training {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  TrainConfig config;
  graph::SplitSpec split;
  std::string dataset_name;
  std::string dataset_fingerprint;
  std::size_t feature_dim = 0;
  std::size_t best_round = 0;
  Model model;
};

inline constexpr int kCheckpointVersion = 1;

// Versioned JSON: config, dims, split, dataset identity and every named
// tensor as {name, shape, dtype "f64", data}. Doubles round-trip exactly.
std::string CheckpointToJson(Checkpoint& checkpoint);
Checkpoint CheckpointFromJson(const std::string& text);
void SaveCheckpoint(Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace evinet::training

#endif  // EVINET_TRAINING_CHECKPOINT_H_
