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

#ifndef EVINET_TRAINING_CONFIG_H_
#define EVINET_TRAINING_CONFIG_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "evinet/evidential/heads.h"

namespace evinet::training {

using numerics::Real;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  // Required.
  Real lr_p1 = 0.0;
  Real dropout_p1 = 0.0;
  Real gamma = 0.0;
  Real lr_p2 = 0.0;
  Real dropout_p2 = 0.0;

  std::size_t epochs_p1 = 200;
  std::size_t epochs_p2 = 200;
  std::size_t rounds = 5;
  std::uint64_t seed = 0;

  std::size_t embedding_dim = 32;
  std::size_t hidden_dim = 64;
  std::size_t disjunction_dim = 64;
  std::size_t head_hidden_dim = 64;

  Real adam_beta1 = 0.9;
  Real adam_beta2 = 0.999;
  Real adam_eps = 1e-8;
  Real weight_decay = 0.0;
  Real bn_momentum = 0.1;
  Real bn_eps = 1e-5;

  // Empty: hold out the last floor(C / 3) classes (at least one).
  std::vector<std::size_t> ood_classes;
  Real ood_val_fraction = 0.2;
  std::array<Real, 3> split_ratios = {1.0, 1.0, 8.0};

  evidential::Ablation ablation;

  Real selection_acc_weight = 1.0;
  Real selection_auroc_weight = 1.0;
  Real selection_aurc_weight = 10.0;

  // Throws ConfigError naming the offending field.
  void Validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// TOML subset: comments, [section] headers (names are cosmetic), and
// key = value with booleans, numbers, quoted strings and one-line numeric
// arrays. A document whose first non-blank character is '{' is read as
// JSON, where nested objects are flattened. Errors read
// "<source>:<line>: <message>".
TrainConfig ParseConfig(const std::string& text, const std::string& source = "config");
TrainConfig LoadConfig(const std::filesystem::path& path);

// Canonical TOML rendering; ParseConfig(ConfigToToml(c)) == c.
std::string ConfigToToml(const TrainConfig& config);
// Hex FNV-1a of the canonical rendering.
std::string ConfigHash(const TrainConfig& config);

// OOD classes for a dataset with num_classes classes under this config.
std::vector<std::size_t> ResolveOodClasses(const TrainConfig& config,
                                           std::size_t num_classes);

}  // namespace evinet::training

#endif  // EVINET_TRAINING_CONFIG_H_
