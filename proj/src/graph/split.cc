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

#include "evinet/graph/split.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "evinet/common/file_util.h"
#include "evinet/numerics/random.h"
#include "json.hpp"

namespace evinet::graph {
namespace {

using nlohmann::json;

std::size_t RoundShare(std::size_t n, Real share) {
  return static_cast<std::size_t>(std::llround(static_cast<Real>(n) * share));
}

}  // namespace

std::optional<std::size_t> SplitSpec::KnownIndex(std::size_t label) const {
  auto it = std::lower_bound(id_classes.begin(), id_classes.end(), label);
  if (it == id_classes.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - id_classes.begin());
}

SplitSpec MakeSplit(const Graph& g, const std::vector<std::size_t>& ood_classes,
                    std::uint64_t seed, const SplitOptions& options) {
  std::set<std::size_t> ood_set;
  for (std::size_t c : ood_classes) {
    if (c >= g.num_classes)
      throw GraphError("OOD class " + std::to_string(c) +
                       " does not exist (C=" + std::to_string(g.num_classes) +
                       ")");
    ood_set.insert(c);
  }
  SplitSpec spec;
  spec.seed = seed;
  spec.ood_classes.assign(ood_set.begin(), ood_set.end());
  for (std::size_t c = 0; c < g.num_classes; ++c)
    if (!ood_set.count(c)) spec.id_classes.push_back(c);
  if (spec.id_classes.size() < 2)
    throw GraphError("label leave-out keeps " +
                     std::to_string(spec.id_classes.size()) +
                     " in-distribution classes; at least 2 are required");

  std::vector<std::size_t> class_size(g.num_classes, 0);
  std::vector<std::size_t> id_nodes, ood_nodes;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    ++class_size[g.labels[i]];
    (ood_set.count(g.labels[i]) ? ood_nodes : id_nodes).push_back(i);
  }
  for (std::size_t c : spec.id_classes)
    if (class_size[c] == 0)
      throw GraphError("in-distribution class " + std::to_string(c) +
                       " has no nodes");

  const Real total = options.ratios[0] + options.ratios[1] + options.ratios[2];
  if (!(options.ratios[0] > 0.0 && options.ratios[1] >= 0.0 &&
        options.ratios[2] >= 0.0))
    throw GraphError("split ratios must be nonnegative with a positive train share");
  if (!(options.ood_val_fraction >= 0.0 && options.ood_val_fraction <= 1.0))
    throw GraphError("ood_val_fraction must lie in [0, 1]");
  const std::size_t n_train = RoundShare(id_nodes.size(), options.ratios[0] / total);
  const std::size_t n_val = std::min(
      id_nodes.size() - n_train, RoundShare(id_nodes.size(), options.ratios[1] / total));

  std::uint64_t key = seed;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::uint64_t attempt_seed = attempt == 0 ? seed : numerics::SplitMix64(key);
    numerics::Rng rng(attempt_seed);
    std::vector<std::size_t> order = id_nodes;
    rng.Shuffle(order);
    spec.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    spec.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                    order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    spec.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val),
                     order.end());

    std::vector<std::size_t> in_train(g.num_classes, 0);
    for (std::size_t i : spec.train) ++in_train[g.labels[i]];
    bool covered = true;
    for (std::size_t c : spec.id_classes)
      if (class_size[c] >= options.min_class_size_for_train && in_train[c] == 0)
        covered = false;
    if (!covered) continue;

    std::vector<std::size_t> ood_order = ood_nodes;
    rng.Shuffle(ood_order);
    const std::size_t n_ood_val =
        RoundShare(ood_order.size(), options.ood_val_fraction);
    spec.ood_val.assign(ood_order.begin(),
                        ood_order.begin() + static_cast<std::ptrdiff_t>(n_ood_val));
    spec.ood_test.assign(ood_order.begin() + static_cast<std::ptrdiff_t>(n_ood_val),
                         ood_order.end());
    for (auto* mask : {&spec.train, &spec.val, &spec.test, &spec.ood_val,
                       &spec.ood_test})
      std::sort(mask->begin(), mask->end());
    return spec;
  }
  throw GraphError("no split within " + std::to_string(options.max_attempts) +
                   " attempts places every class into train");
}

void ValidateSplit(const Graph& g, const SplitSpec& split) {
  std::vector<int> seen(g.num_nodes(), 0);
  auto mark = [&](const std::vector<std::size_t>& mask, bool ood,
                  const char* name) {
    for (std::size_t i : mask) {
      if (i >= g.num_nodes())
        throw GraphError(std::string("split mask '") + name +
                         "' references node " + std::to_string(i) +
                         " outside the graph");
      if (seen[i]++)
        throw GraphError("node " + std::to_string(i) +
                         " appears in more than one split mask");
      const bool is_ood = !split.KnownIndex(g.labels[i]).has_value();
      if (is_ood != ood)
        throw GraphError(std::string("split mask '") + name +
                         "' holds node " + std::to_string(i) +
                         " of the wrong distribution");
    }
  };
  mark(split.train, false, "train");
  mark(split.val, false, "val");
  mark(split.test, false, "test");
  mark(split.ood_val, true, "ood_val");
  mark(split.ood_test, true, "ood_test");
  for (std::size_t i = 0; i < g.num_nodes(); ++i)
    if (!seen[i] && split.KnownIndex(g.labels[i]))
      throw GraphError("in-distribution node " + std::to_string(i) +
                       " is in no split mask");
}

std::string SplitToJson(const SplitSpec& s) {
  json j = {{"seed", s.seed},         {"id_classes", s.id_classes},
            {"ood_classes", s.ood_classes}, {"train", s.train},
            {"val", s.val},           {"test", s.test},
            {"ood_val", s.ood_val},   {"ood_test", s.ood_test}};
  return j.dump() + "\n";
}

SplitSpec SplitFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    SplitSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.id_classes = j.at("id_classes").get<std::vector<std::size_t>>();
    s.ood_classes = j.at("ood_classes").get<std::vector<std::size_t>>();
    s.train = j.at("train").get<std::vector<std::size_t>>();
    s.val = j.at("val").get<std::vector<std::size_t>>();
    s.test = j.at("test").get<std::vector<std::size_t>>();
    s.ood_val = j.at("ood_val").get<std::vector<std::size_t>>();
    s.ood_test = j.at("ood_test").get<std::vector<std::size_t>>();
    return s;
  } catch (const json::exception& e) {
    throw GraphError(std::string("split file: ") + e.what());
  }
}

void SaveSplit(const SplitSpec& split, const std::filesystem::path& path) {
  WriteFileAtomic(path, SplitToJson(split));
}

SplitSpec LoadSplit(const std::filesystem::path& path) {
  return SplitFromJson(ReadFile(path));
}

}  // namespace evinet::graph
