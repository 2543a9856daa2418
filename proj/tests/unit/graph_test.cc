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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "evinet/common/file_util.h"
#include "evinet/graph/dataset_io.h"
#include "evinet/graph/generators.h"
#include "evinet/graph/graph.h"
#include "evinet/graph/normalize.h"
#include "evinet/graph/split.h"
#include "evinet/numerics/random.h"
#include "gtest/gtest.h"

namespace evinet::graph {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("evinet_graph_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void WriteText(const fs::path& p, const std::string& s) {
  std::ofstream(p) << s;
}

void WriteToy(const fs::path& dir, const std::string& edges) {
  WriteText(dir / "edges.tsv", edges);
  WriteText(dir / "features.csv", "1,2\n3,4\n5,6\n7,8\n9,10\n");
  WriteText(dir / "labels.csv", "0\n1\n0\n1\n1\n");
  WriteText(dir / "meta.json", R"({"n":5,"F":2,"C":2,"name":"toy5"})");
}

TEST(LoadDataset, ToyThreeNode) {
  const Graph g = LoadDataset(EVINET_SOURCE_DIR "/data/toy3", {.zscore_features = false});
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.num_classes, 2u);
  EXPECT_EQ(g.name, "toy3");
  EXPECT_EQ(g.features(1, 0), 0.5);
}

TEST(LoadDataset, DeduplicatesAndDropsSelfLoops) {
  const fs::path dir = TempDir("dedupe");
  WriteToy(dir, "0 1\n1 0\n0\t1\n2 2\n# comment\n3 4\n");
  const Graph g = LoadDataset(dir, {.zscore_features = false});
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.adjacency.At(2, 2), 0.0);
  EXPECT_TRUE(g.adjacency.IsSymmetric());
}

TEST(LoadDataset, EdgeOutOfRange) {
  const fs::path dir = TempDir("range");
  WriteToy(dir, "0 1\n2 9\n");
  try {
    LoadDataset(dir);
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("edges.tsv:2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("(2, 9)"), std::string::npos);
  }
}

TEST(LoadDataset, MissingFileAndBadCells) {
  const fs::path dir = TempDir("bad");
  WriteToy(dir, "0 1\n");
  fs::remove(dir / "labels.csv");
  EXPECT_THROW(LoadDataset(dir), GraphError);

  WriteToy(dir, "0 1\n");
  WriteText(dir / "features.csv", "1,2\n3,abc\n5,6\n7,8\n9,10\n");
  try {
    LoadDataset(dir);
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("features.csv:2"), std::string::npos);
  }

  WriteToy(dir, "0 1\n");
  WriteText(dir / "labels.csv", "0\n1\n0\n7\n1\n");
  EXPECT_THROW(LoadDataset(dir), GraphError);
}

TEST(LoadDataset, ZScoreIsPerColumn) {
  const fs::path dir = TempDir("zscore");
  WriteToy(dir, "0 1\n");
  const Graph g = LoadDataset(dir);
  for (std::size_t c = 0; c < 2; ++c) {
    Real mean = 0.0, sq = 0.0;
    for (std::size_t r = 0; r < 5; ++r) {
      mean += g.features(r, c);
      sq += g.features(r, c) * g.features(r, c);
    }
    EXPECT_NEAR(mean / 5, 0.0, 1e-12);
    EXPECT_NEAR(sq / 5, 1.0, 1e-12);
  }
}

TEST(SaveDataset, RoundTripIsIdentity) {
  PlantedPartitionParams p;
  p.blocks = 3;
  p.nodes_per_block = 20;
  p.p_in = 0.3;
  const Graph g = GeneratePlantedPartition(p);
  const fs::path dir = TempDir("roundtrip");
  SaveDataset(g, dir);
  EXPECT_EQ(LoadDataset(dir, {.zscore_features = false}), g);
}

TEST(SaveDataset, BinaryFeaturesRoundTripAsFloat32) {
  const Graph g = GenerateErdosRenyi(30, 0.2, 4, 5);
  const fs::path dir = TempDir("binary");
  SaveDataset(g, dir, FeatureFormat::kBinary);
  const Graph back = LoadDataset(dir, {.zscore_features = false});
  EXPECT_EQ(back.adjacency, g.adjacency);
  EXPECT_EQ(back.labels, g.labels);
  for (std::size_t i = 0; i < g.features.size(); ++i)
    EXPECT_EQ(back.features.data()[i],
              static_cast<Real>(static_cast<float>(g.features.data()[i])));
}

Graph PathGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return MakeGraph("path", n, edges, DenseMatrix(n, 1),
                   std::vector<std::size_t>(n, 0), 1);
}

TEST(NormalizeAdjacency, Examples) {
  const auto single = NormalizeAdjacency(PathGraph(1));
  EXPECT_EQ(single.matrix.ToDense(), DenseMatrix{{1.0}});

  const auto pair = NormalizeAdjacency(PathGraph(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_NEAR(pair.matrix.At(i, j), 0.5, 1e-15);

  const auto path = NormalizeAdjacency(PathGraph(3));
  EXPECT_NEAR(path.matrix.At(0, 1), 1.0 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(path.matrix.At(0, 1), 0.4082, 1e-4);
  EXPECT_NEAR(path.matrix.At(1, 1), 1.0 / 3.0, 1e-15);
}

TEST(NormalizeAdjacency, DenseOracleAndDegreeReconstruction) {
  numerics::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.UniformInt(12);
    const Graph g = GenerateErdosRenyi(n, 0.3, 1, rng.NextU64());
    const auto norm = NormalizeAdjacency(g);
    EXPECT_TRUE(norm.matrix.IsSymmetric(1e-15));

    DenseMatrix a = g.adjacency.ToDense();
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
    std::vector<Real> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i] += a(i, j);
    for (std::size_t i = 0; i < n; ++i) {
      Real reconstructed = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(norm.matrix.At(i, j), a(i, j) / std::sqrt(d[i] * d[j]), 1e-15);
        reconstructed += std::sqrt(d[i]) * norm.matrix.At(i, j) * std::sqrt(d[j]);
      }
      EXPECT_NEAR(reconstructed, d[i], 1e-12);
      EXPECT_EQ(norm.degrees[i], d[i]);
    }
  }
}

Graph LabeledGraph(const std::vector<std::size_t>& labels, std::size_t classes) {
  return MakeGraph("labeled", labels.size(), {}, DenseMatrix(labels.size(), 1),
                   labels, classes);
}

TEST(MakeSplit, RatioArithmetic) {
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < 100; ++i) labels.push_back(i % 4);
  for (std::size_t i = 0; i < 30; ++i) labels.push_back(4);
  const Graph g = LabeledGraph(labels, 5);
  const SplitSpec s = MakeSplit(g, {4}, 1);
  EXPECT_EQ(s.train.size(), 10u);
  EXPECT_EQ(s.val.size(), 10u);
  EXPECT_EQ(s.test.size(), 80u);
  EXPECT_EQ(s.ood_val.size(), 6u);
  EXPECT_EQ(s.ood_test.size(), 24u);
  EXPECT_EQ(s.id_classes, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(s.KnownIndex(3), std::optional<std::size_t>(3));
  EXPECT_FALSE(s.KnownIndex(4).has_value());
  ValidateSplit(g, s);
}

TEST(MakeSplit, AllClassesOodIsAnError) {
  const Graph g = LabeledGraph({0, 1, 2, 0, 1, 2}, 3);
  EXPECT_THROW(MakeSplit(g, {0, 1, 2}, 1), GraphError);
  EXPECT_THROW(MakeSplit(g, {0, 1}, 1), GraphError);
  EXPECT_THROW(MakeSplit(g, {7}, 1), GraphError);
}

TEST(MakeSplit, DeterministicPerSeed) {
  const Graph g = GeneratePlantedPartition(Ppm6Params());
  EXPECT_EQ(MakeSplit(g, {4, 5}, 3), MakeSplit(g, {4, 5}, 3));
  EXPECT_NE(MakeSplit(g, {4, 5}, 3).train, MakeSplit(g, {4, 5}, 4).train);
}

TEST(MakeSplit, PartitionProperty) {
  numerics::Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t classes = 3 + rng.UniformInt(4);
    std::vector<std::size_t> labels(40 + rng.UniformInt(200));
    for (auto& y : labels) y = rng.UniformInt(classes);
    const Graph g = LabeledGraph(labels, classes);
    const SplitSpec s = MakeSplit(g, {classes - 1}, rng.NextU64());
    ValidateSplit(g, s);
    std::set<std::size_t> train_classes;
    for (std::size_t i : s.train) train_classes.insert(g.labels[i]);
    std::vector<std::size_t> counts(classes, 0);
    for (std::size_t y : labels) ++counts[y];
    for (std::size_t c : s.id_classes)
      if (counts[c] >= 10) {
        EXPECT_TRUE(train_classes.count(c)) << c;
      }
  }
}

TEST(Split, JsonRoundTrip) {
  const Graph g = GeneratePlantedPartition(Ppm6Params());
  const SplitSpec s = MakeSplit(g, {4, 5}, 11);
  EXPECT_EQ(SplitFromJson(SplitToJson(s)), s);
  EXPECT_THROW(SplitFromJson("{\"seed\": 1}"), GraphError);
}

TEST(ValidateSplit, DetectsOverlapAndLeaks) {
  const Graph g = GeneratePlantedPartition(Ppm6Params());
  SplitSpec s = MakeSplit(g, {4, 5}, 11);
  SplitSpec overlap = s;
  overlap.val.push_back(overlap.train.front());
  EXPECT_THROW(ValidateSplit(g, overlap), GraphError);
  SplitSpec leak = s;
  leak.train.push_back(leak.ood_test.front());
  EXPECT_THROW(ValidateSplit(g, leak), GraphError);
}

TEST(ErdosRenyi, ZeroDensityHasNoEdges) {
  EXPECT_EQ(GenerateErdosRenyi(200, 0.0, 3, 1).num_edges(), 0u);
}

TEST(ErdosRenyi, EdgeCountWithinBinomialBound) {
  const std::size_t n = 10000;
  const Real p = 0.005;
  const Graph g = GenerateErdosRenyi(n, p, 2, 12345);
  const Real pairs = static_cast<Real>(n) * (n - 1) / 2.0;
  const Real mean = p * pairs;
  const Real sigma = std::sqrt(pairs * p * (1 - p));
  EXPECT_NEAR(static_cast<Real>(g.num_edges()), mean, 3 * sigma);
}

TEST(ErdosRenyi, SeedDeterministic) {
  EXPECT_EQ(GenerateErdosRenyi(500, 0.01, 4, 9), GenerateErdosRenyi(500, 0.01, 4, 9));
  EXPECT_NE(GenerateErdosRenyi(500, 0.01, 4, 9).adjacency,
            GenerateErdosRenyi(500, 0.01, 4, 10).adjacency);
  EXPECT_THROW(GenerateErdosRenyi(10, 1.5, 1, 1), GraphError);
}

TEST(PlantedPartition, NoCrossEdgesWhenPOutIsZero) {
  PlantedPartitionParams p;
  p.blocks = 4;
  p.nodes_per_block = 30;
  p.p_in = 0.2;
  p.p_out = 0.0;
  const Graph g = GeneratePlantedPartition(p);
  EXPECT_GT(g.num_edges(), 0u);
  for (const auto& [u, v] : g.EdgeList()) EXPECT_EQ(g.labels[u], g.labels[v]);
}

TEST(PlantedPartition, ZeroSeparationCarriesNoSignal) {
  PlantedPartitionParams p;
  p.mean_separation = 0.0;
  p.nodes_per_block = 2000;
  p.p_in = 0.001;
  p.p_out = 0.0;
  const Graph g = GeneratePlantedPartition(p);
  for (std::size_t b = 0; b < p.blocks; ++b)
    for (std::size_t f = 0; f < p.feature_dim; ++f) {
      Real mean = 0.0;
      for (std::size_t i = b * p.nodes_per_block; i < (b + 1) * p.nodes_per_block; ++i)
        mean += g.features(i, f);
      mean /= static_cast<Real>(p.nodes_per_block);
      // 4 sigma of a mean over 2000 standard normals.
      EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(2000.0));
    }
}

TEST(PlantedPartition, Ppm6Reference) {
  const Graph a = GeneratePlantedPartition(Ppm6Params());
  const Graph b = GeneratePlantedPartition(Ppm6Params());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.num_nodes(), 1200u);
  EXPECT_EQ(a.num_classes, 6u);
  EXPECT_EQ(a.feature_dim(), 16u);
  // ~6 * C(200,2) * 0.05 intra + 15 * 200^2 * 0.002 cross = 5970 + 1200.
  EXPECT_NEAR(static_cast<Real>(a.num_edges()), 7170.0, 300.0);
  EXPECT_THROW(GeneratePlantedPartition({.p_in = 0.01, .p_out = 0.02}), GraphError);
}

}  // namespace
}  // namespace evinet::graph
