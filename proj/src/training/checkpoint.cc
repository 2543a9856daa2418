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

#include "evinet/training/checkpoint.h"

#include <map>

#include "evinet/common/file_util.h"
#include "json.hpp"

namespace evinet::training {
namespace {
using nlohmann::json;
}  // namespace

std::string CheckpointToJson(Checkpoint& c) {
  json tensors = json::array();
  for (const auto& [name, m] : c.model.NamedTensors()) {
    const auto d = m->data();
    tensors.push_back({{"name", name},
                       {"shape", {m->rows(), m->cols()}},
                       {"dtype", "f64"},
                       {"data", std::vector<Real>(d.begin(), d.end())}});
  }
  json j = {{"format", "evinet-checkpoint"},
            {"version", kCheckpointVersion},
            {"config", ConfigToToml(c.config)},
            {"config_hash", ConfigHash(c.config)},
            {"dataset", {{"name", c.dataset_name}, {"fingerprint", c.dataset_fingerprint}}},
            {"dims",
             {{"feature_dim", c.feature_dim},
              {"num_known", c.model.num_known()},
              {"embedding_dim", c.config.embedding_dim},
              {"hidden_dim", c.config.hidden_dim},
              {"disjunction_dim", c.config.disjunction_dim},
              {"head_hidden_dim", c.config.head_hidden_dim}}},
            {"best_round", c.best_round},
            {"split", json::parse(graph::SplitToJson(c.split))},
            {"tensors", tensors}};
  return j.dump() + "\n";
}

Checkpoint CheckpointFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", std::string()) != "evinet-checkpoint")
      throw CheckpointError("checkpoint: not an evinet checkpoint");
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion)
      throw CheckpointError("checkpoint: unsupported version " + std::to_string(version));
    Checkpoint c;
    c.config = ParseConfig(j.at("config").get<std::string>(), "checkpoint config");
    c.dataset_name = j.at("dataset").at("name").get<std::string>();
    c.dataset_fingerprint = j.at("dataset").at("fingerprint").get<std::string>();
    c.feature_dim = j.at("dims").at("feature_dim").get<std::size_t>();
    c.best_round = j.at("best_round").get<std::size_t>();
    c.split = graph::SplitFromJson(j.at("split").dump());
    const std::size_t num_known = j.at("dims").at("num_known").get<std::size_t>();
    if (num_known != c.split.num_known())
      throw CheckpointError("checkpoint: num_known disagrees with the split");
    numerics::Rng rng(0);
    c.model = Model::Init(c.feature_dim, num_known, c.config, rng);

    std::map<std::string, const json*> stored;
    for (const auto& t : j.at("tensors")) stored[t.at("name").get<std::string>()] = &t;
    for (const auto& [name, m] : c.model.NamedTensors()) {
      auto it = stored.find(name);
      if (it == stored.end()) throw CheckpointError("checkpoint: missing tensor '" + name + "'");
      const json& t = *it->second;
      if (t.at("dtype").get<std::string>() != "f64")
        throw CheckpointError("checkpoint: tensor '" + name + "' has unsupported dtype");
      const auto shape = t.at("shape").get<std::vector<std::size_t>>();
      if (shape.size() != 2 || shape[0] != m->rows() || shape[1] != m->cols())
        throw CheckpointError("checkpoint: tensor '" + name + "' has the wrong shape");
      auto data = t.at("data").get<std::vector<Real>>();
      if (data.size() != m->size())
        throw CheckpointError("checkpoint: tensor '" + name + "' has the wrong size");
      *m = DenseMatrix(shape[0], shape[1], std::move(data));
      stored.erase(it);
    }
    if (!stored.empty())
      throw CheckpointError("checkpoint: unexpected tensor '" + stored.begin()->first + "'");
    return c;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  } catch (const ConfigError& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
}

void SaveCheckpoint(Checkpoint& checkpoint, const std::filesystem::path& path) {
  WriteFileAtomic(path, CheckpointToJson(checkpoint));
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const IoError& e) {
    throw CheckpointError(e.what());
  }
  return CheckpointFromJson(text);
}

}  // namespace evinet::training
