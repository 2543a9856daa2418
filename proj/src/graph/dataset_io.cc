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

#include "evinet/graph/dataset_io.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "evinet/common/file_util.h"
#include "json.hpp"

namespace evinet::graph {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Where(const fs::path& file, std::size_t line) {
  return file.filename().string() + ":" + std::to_string(line) + ": ";
}

std::string ReadRequired(const fs::path& path) {
  if (!fs::exists(path))
    throw GraphError("missing dataset file '" + path.string() + "'");
  return ReadFile(path);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Calls fn(line_number, line) for each non-blank, non-comment line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    fn(line_no, line);
  }
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  s = Trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t RequireCount(const json& meta, const char* key,
                         const fs::path& file) {
  if (!meta.contains(key) || !meta[key].is_number_unsigned())
    throw GraphError(file.filename().string() + ": field '" + key +
                     "' missing or not a nonnegative integer");
  return meta[key].get<std::size_t>();
}

DenseMatrix ParseFeaturesCsv(const fs::path& path, std::size_t n,
                             std::size_t f) {
  DenseMatrix x(n, f);
  std::size_t row = 0;
  ForEachLine(ReadRequired(path), [&](std::size_t line_no,
                                      std::string_view line) {
    if (row >= n)
      throw GraphError(Where(path, line_no) + "more than " +
                       std::to_string(n) + " feature rows");
    std::size_t col = 0;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view cell = line.substr(0, comma);
      if (col >= f)
        throw GraphError(Where(path, line_no) + "more than " +
                         std::to_string(f) + " columns");
      Real v = 0.0;
      if (!ParseNumber(cell, v))
        throw GraphError(Where(path, line_no) + "non-numeric feature cell '" +
                         std::string(Trim(cell)) + "'");
      x(row, col++) = v;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (col != f)
      throw GraphError(Where(path, line_no) + "expected " + std::to_string(f) +
                       " columns, found " + std::to_string(col));
    ++row;
  });
  if (row != n)
    throw GraphError(path.filename().string() + ": expected " +
                     std::to_string(n) + " rows, found " + std::to_string(row));
  return x;
}

DenseMatrix ParseFeaturesBin(const fs::path& path, std::size_t n,
                             std::size_t f) {
  const std::string bytes = ReadRequired(path);
  if (bytes.size() != n * f * sizeof(float))
    throw GraphError(path.filename().string() + ": expected " +
                     std::to_string(n * f * sizeof(float)) + " bytes, found " +
                     std::to_string(bytes.size()));
  DenseMatrix x(n, f);
  auto out = x.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 3; b >= 0; --b)
      bits = (bits << 8) |
             static_cast<unsigned char>(bytes[i * sizeof(float) + b]);
    out[i] = static_cast<Real>(std::bit_cast<float>(bits));
  }
  return x;
}

}  // namespace

Graph LoadDataset(const fs::path& dir, const LoadOptions& options) {
  const fs::path meta_path = dir / "meta.json";
  json meta;
  try {
    meta = json::parse(ReadRequired(meta_path));
  } catch (const json::parse_error& e) {
    throw GraphError("meta.json: " + std::string(e.what()));
  }
  const std::size_t n = RequireCount(meta, "n", meta_path);
  const std::size_t f = RequireCount(meta, "F", meta_path);
  const std::size_t c = RequireCount(meta, "C", meta_path);
  const std::string name =
      meta.value("name", dir.filename().string());

  const fs::path edges_path = dir / "edges.tsv";
  std::vector<Edge> edges;
  ForEachLine(ReadRequired(edges_path), [&](std::size_t line_no,
                                            std::string_view line) {
    const auto split = line.find_first_of(" \t");
    std::size_t u = 0, v = 0;
    if (split == std::string_view::npos ||
        !ParseNumber(line.substr(0, split), u) ||
        !ParseNumber(line.substr(split + 1), v))
      throw GraphError(Where(edges_path, line_no) +
                       "expected two node ids, got '" + std::string(line) +
                       "'");
    if (u >= n || v >= n)
      throw GraphError(Where(edges_path, line_no) + "edge (" +
                       std::to_string(u) + ", " + std::to_string(v) +
                       ") out of range for " + std::to_string(n) + " nodes");
    edges.emplace_back(u, v);
  });

  DenseMatrix features = fs::exists(dir / "features.csv")
                             ? ParseFeaturesCsv(dir / "features.csv", n, f)
                             : ParseFeaturesBin(dir / "features.bin", n, f);

  const fs::path labels_path = dir / "labels.csv";
  std::vector<std::size_t> labels;
  labels.reserve(n);
  ForEachLine(ReadRequired(labels_path), [&](std::size_t line_no,
                                             std::string_view line) {
    std::size_t y = 0;
    if (!ParseNumber(line, y))
      throw GraphError(Where(labels_path, line_no) + "non-integer label '" +
                       std::string(line) + "'");
    if (y >= c)
      throw GraphError(Where(labels_path, line_no) + "label " +
                       std::to_string(y) + " out of range for C=" +
                       std::to_string(c));
    labels.push_back(y);
  });
  if (labels.size() != n)
    throw GraphError("labels.csv: expected " + std::to_string(n) +
                     " labels, found " + std::to_string(labels.size()));

  if (options.zscore_features) ZScoreColumns(features);
  return MakeGraph(name, n, edges, std::move(features), std::move(labels), c);
}

void SaveDataset(const Graph& g, const fs::path& dir, FeatureFormat format) {
  g.Validate();
  std::string edges;
  for (const auto& [u, v] : g.EdgeList())
    edges += std::to_string(u) + "\t" + std::to_string(v) + "\n";

  std::string labels;
  for (std::size_t y : g.labels) labels += std::to_string(y) + "\n";

  json meta = {{"n", g.num_nodes()},
               {"F", g.feature_dim()},
               {"C", g.num_classes},
               {"name", g.name}};

  std::error_code ec;
  if (format == FeatureFormat::kCsv) {
    std::string csv;
    for (std::size_t r = 0; r < g.features.rows(); ++r) {
      const auto row = g.features.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) csv += ',';
        csv += FormatReal(row[c]);
      }
      csv += '\n';
    }
    WriteFileAtomic(dir / "features.csv", csv);
    fs::remove(dir / "features.bin", ec);
  } else {
    std::string bin(g.features.size() * sizeof(float), '\0');
    auto data = g.features.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(data[i]));
      for (int b = 0; b < 4; ++b)
        bin[i * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    }
    WriteFileAtomic(dir / "features.bin", bin);
    fs::remove(dir / "features.csv", ec);
  }
  WriteFileAtomic(dir / "edges.tsv", edges);
  WriteFileAtomic(dir / "labels.csv", labels);
  WriteFileAtomic(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace evinet::graph
