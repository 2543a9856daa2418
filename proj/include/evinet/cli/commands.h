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

#ifndef EVINET_CLI_COMMANDS_H_
#define EVINET_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evinet/graph/generators.h"
#include "evinet/training/config.h"

namespace evinet::cli {

namespace fs = std::filesystem;
using numerics::Real;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr const char* kArtifactVersion = "evinet 0.1.0";

// Mapped to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative output paths land under $EVINET_OUTPUT_ROOT when it is set.
fs::path ResolveOutput(const fs::path& out);

struct SynthOptions {
  std::string kind;  // "er" or "ppm"
  std::size_t nodes = 5000;
  Real density = 0.005;
  std::size_t num_classes = 5;
  std::size_t feature_dim = 16;
  std::uint64_t seed = 0;
  graph::PlantedPartitionParams ppm = graph::Ppm6Params();
  bool binary_features = false;
  fs::path out;
};

struct TrainOptions {
  fs::path dataset;
  fs::path config;
  fs::path out;
  // Empty: the config seed. Several seeds write seed_<s>/ subdirectories.
  std::vector<std::uint64_t> seeds;
  bool zscore = true;
};

struct EvalOptions {
  fs::path dataset;
  std::vector<fs::path> checkpoints;
  std::optional<fs::path> split;  // overrides the split stored in each checkpoint
  fs::path out;
  bool baselines = true;
  std::size_t baseline_epochs = 200;
  bool zscore = true;
};

struct AblateOptions {
  fs::path dataset;
  fs::path config;
  std::vector<std::string> variants = {"a", "b", "c", "d", "e", "no_at"};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  fs::path out;
  bool zscore = true;
};

struct ScaleOptions {
  std::vector<std::size_t> nodes = {5000, 10000, 20000};
  std::vector<Real> densities = {0.005};
  std::optional<fs::path> config;
  std::optional<std::size_t> epochs;  // overrides both phases
  std::size_t feature_dim = 16;
  std::uint64_t seed = 0;
  fs::path out;
};

struct GridSearchOptions {
  fs::path dataset;
  fs::path config;
  fs::path out;
  std::vector<Real> lrs = {0.01, 0.001, 0.0005};
  std::vector<Real> dropouts = {0.2, 0.4, 0.6};
  std::vector<Real> gammas = {15, 55, 95, 135};
  bool zscore = true;
};

// Each returns an exit code and writes progress to log. Errors surface as
// exceptions; Main maps them to exit codes.
int CmdSynth(const SynthOptions& options, std::ostream& log);
int CmdTrain(const TrainOptions& options, std::ostream& log);
int CmdEval(const EvalOptions& options, std::ostream& log);
int CmdAblate(const AblateOptions& options, std::ostream& log);
int CmdScale(const ScaleOptions& options, std::ostream& log);
int CmdGridSearch(const GridSearchOptions& options, std::ostream& log);

// Config changes for an ablation variant: a, b, c, d, e or no_at.
training::TrainConfig ApplyVariant(training::TrainConfig config, const std::string& variant);

// Parses argv and dispatches; never throws.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evinet::cli

#endif  // EVINET_CLI_COMMANDS_H_
