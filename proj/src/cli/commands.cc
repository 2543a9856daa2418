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

#include "evinet/cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <new>
#include <ostream>

#include "evinet/common/file_util.h"
#include "evinet/eval/report.h"
#include "evinet/graph/dataset_io.h"
#include "evinet/training/checkpoint.h"
#include "evinet/training/trainer.h"
#include "json.hpp"

namespace evinet::cli {
namespace {

using nlohmann::json;
using training::TrainConfig;

Real Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<Real>(std::chrono::steady_clock::now() - since).count();
}

// Collects the files a command writes and emits manifest.json.
class Manifest {
 public:
  Manifest(std::string command, fs::path root) : root_(std::move(root)) {
    j_["format"] = "evinet-manifest";
    j_["command"] = std::move(command);
    j_["artifact_version"] = kArtifactVersion;
    j_["output_dir"] = fs::absolute(root_).lexically_normal().string();
    j_["started_at"] = UtcTimestamp();
  }

  json& operator[](const char* key) { return j_[key]; }

  void Write(const fs::path& path, const std::string& data) {
    WriteFileAtomic(path, data);
    files_.push_back(path);
  }

  void Finish() {
    json files = json::array();
    for (const auto& f : files_)
      files.push_back({{"path", f.lexically_relative(root_).generic_string()},
                       {"hash", HashFile(f)}});
    j_["files"] = files;
    j_["finished_at"] = UtcTimestamp();
    WriteFileAtomic(root_ / "manifest.json", j_.dump(2) + "\n");
  }

 private:
  fs::path root_;
  json j_;
  std::vector<fs::path> files_;
};

graph::Graph LoadGraph(const fs::path& dir, bool zscore) {
  graph::LoadOptions opts;
  opts.zscore_features = zscore;
  return graph::LoadDataset(dir, opts);
}

json ConfigInfo(const fs::path& path, const TrainConfig& config) {
  return {{"path", path.string()},
          {"hash", HashFile(path)},
          {"resolved_hash", training::ConfigHash(config)}};
}

json DatasetInfo(const fs::path& dir, const graph::Graph& g) {
  return {{"path", dir.string()},
          {"name", g.name},
          {"hash", training::GraphFingerprint(g)},
          {"num_nodes", g.num_nodes()},
          {"num_edges", g.num_edges()},
          {"num_classes", g.num_classes}};
}

void LogRound(std::ostream& log, std::uint64_t seed, const training::HistoryRow& h) {
  auto opt = [](const std::optional<Real>& v) { return v ? FormatReal(*v) : std::string("-"); };
  log << "seed " << seed << " round " << h.round << ": bl_loss=" << opt(h.bl_loss)
      << " dl_loss=" << opt(h.dl_loss) << " val_acc=" << FormatReal(h.val_acc)
      << " val_auroc=" << opt(h.val_auroc) << " val_aurc=" << FormatReal(h.val_aurc)
      << " selection=" << FormatReal(h.selection_score) << "\n";
}

eval::EvalReport EvaluateModel(training::Model& model, const training::PreparedData& data,
                               const TrainConfig& config) {
  const training::Inference inf = training::Infer(model, data, config.bn_eps);
  eval::EvalReport r = eval::Evaluate(inf.scores, *data.graph, data.split);
  r.seed = config.seed;
  r.config_hash = training::ConfigHash(config);
  return r;
}

std::string Percent(const std::map<std::string, eval::MeanStd>& m, const char* key,
                    Real scale) {
  auto it = m.find(key);
  if (it == m.end()) return ",";
  return FormatReal(it->second.mean * scale) + "," + FormatReal(it->second.std * scale);
}

std::string MetricColumnsHeader() {
  return "acc_pct_mean,acc_pct_std,aurc_x1000_mean,aurc_x1000_std,fpr95_pct_mean,"
         "fpr95_pct_std,auroc_pct_mean,auroc_pct_std,aupr_pct_mean,aupr_pct_std";
}

std::string MetricColumns(const std::map<std::string, eval::MeanStd>& m) {
  return Percent(m, "acc", 100.0) + "," + Percent(m, "aurc_x1000", 1.0) + "," +
         Percent(m, "fpr95", 100.0) + "," + Percent(m, "auroc", 100.0) + "," +
         Percent(m, "aupr", 100.0);
}

}  // namespace

fs::path ResolveOutput(const fs::path& out) {
  if (out.empty()) throw UsageError("an output directory is required (--out)");
  const char* root = std::getenv("EVINET_OUTPUT_ROOT");
  if (out.is_relative() && root != nullptr && *root != '\0') return fs::path(root) / out;
  return out;
}

int CmdSynth(const SynthOptions& o, std::ostream& log) {
  graph::Graph g;
  if (o.kind == "er") {
    if (!(o.density >= 0.0 && o.density < 1.0))
      throw UsageError("--density must lie in [0, 1), got " + FormatReal(o.density));
    if (o.nodes == 0) throw UsageError("--nodes must be positive");
    if (o.num_classes == 0) throw UsageError("--classes must be positive");
    g = graph::GenerateErdosRenyi(o.nodes, o.density, o.feature_dim, o.seed, o.num_classes);
  } else if (o.kind == "ppm") {
    const auto& p = o.ppm;
    if (!(p.p_out >= 0.0 && p.p_in <= 1.0 && p.p_in > p.p_out))
      throw UsageError("ppm needs 0 <= p_out < p_in <= 1");
    if (p.blocks == 0 || p.nodes_per_block == 0)
      throw UsageError("ppm needs positive --blocks and --block-size");
    g = graph::GeneratePlantedPartition(p);
  } else {
    throw UsageError("unknown synth kind '" + o.kind + "' (expected er or ppm)");
  }
  const fs::path out = ResolveOutput(o.out);
  graph::SaveDataset(g, out,
                     o.binary_features ? graph::FeatureFormat::kBinary
                                       : graph::FeatureFormat::kCsv);
  log << "wrote " << g.name << " (n=" << g.num_nodes() << ", m=" << g.num_edges()
      << ", C=" << g.num_classes << ") to " << out.string() << "\n";
  return kExitOk;
}

int CmdTrain(const TrainOptions& o, std::ostream& log) {
  const TrainConfig base = training::LoadConfig(o.config);
  const graph::Graph g = LoadGraph(o.dataset, o.zscore);
  const fs::path out = ResolveOutput(o.out);
  std::vector<std::uint64_t> seeds = o.seeds;
  if (seeds.empty()) seeds.push_back(base.seed);
  const bool nested = seeds.size() > 1;

  Manifest manifest("train", out);
  manifest["config"] = ConfigInfo(o.config, base);
  manifest["dataset"] = DatasetInfo(o.dataset, g);
  manifest["seeds"] = seeds;
  int status = kExitOk;
  json runs = json::array();
  for (std::uint64_t seed : seeds) {
    TrainConfig config = base;
    config.seed = seed;
    const fs::path dir = nested ? out / ("seed_" + std::to_string(seed)) : out;
    const auto start = std::chrono::steady_clock::now();
    graph::SplitSpec split = training::MakeConfigSplit(g, config);
    manifest.Write(dir / "split.json", graph::SplitToJson(split));
    training::PreparedData data = training::Prepare(g, split);
    try {
      training::TrainResult r = training::TrainAlternating(
          data, config, [&](const training::HistoryRow& h) { LogRound(log, seed, h); });
      manifest.Write(dir / "history.csv", training::HistoryCsv(r.history));
      training::Checkpoint ck{config, data.split, g.name, training::GraphFingerprint(g),
                              g.feature_dim(), r.best_round, std::move(r.model)};
      manifest.Write(dir / "checkpoint.json", training::CheckpointToJson(ck));
      runs.push_back({{"seed", seed},
                      {"status", "ok"},
                      {"best_round", r.best_round},
                      {"seconds", Seconds(start)}});
      log << "seed " << seed << ": best round " << r.best_round << ", "
          << FormatReal(Seconds(start)) << " s\n";
    } catch (const training::TrainingError& e) {
      manifest.Write(dir / "history.csv", training::HistoryCsv(e.history));
      runs.push_back({{"seed", seed}, {"status", "diverged"}, {"error", e.what()}});
      log << "seed " << seed << ": " << e.what() << "\n";
      status = kExitRuntime;
      break;
    }
  }
  manifest["runs"] = runs;
  manifest.Finish();
  if (status != kExitOk) throw training::TrainingError("training diverged; partial history kept", {});
  return status;
}

int CmdEval(const EvalOptions& o, std::ostream& log) {
  if (o.checkpoints.empty()) throw UsageError("at least one --checkpoint is required");
  const graph::Graph g = LoadGraph(o.dataset, o.zscore);
  const fs::path out = ResolveOutput(o.out);
  std::optional<graph::SplitSpec> split_override;
  if (o.split) split_override = graph::LoadSplit(*o.split);

  Manifest manifest("eval", out);
  manifest["dataset"] = DatasetInfo(o.dataset, g);
  std::vector<eval::EvalReport> reports;
  json inputs = json::array();
  for (const fs::path& path : o.checkpoints) {
    const auto start = std::chrono::steady_clock::now();
    training::Checkpoint ck = training::LoadCheckpoint(path);
    graph::SplitSpec split = split_override ? *split_override : ck.split;
    if (!split_override) {
      std::size_t dataset_known = 0;
      const auto ood = training::ResolveOodClasses(ck.config, g.num_classes);
      for (std::size_t k = 0; k < g.num_classes; ++k)
        dataset_known += std::find(ood.begin(), ood.end(), k) == ood.end();
      if (dataset_known != ck.model.num_known())
        throw UsageError("checkpoint " + path.string() + " has K=" +
                         std::to_string(ck.model.num_known()) +
                         " known classes but the dataset provides K=" +
                         std::to_string(dataset_known));
    }
    if (ck.feature_dim != g.feature_dim())
      throw UsageError("checkpoint " + path.string() + " expects " +
                       std::to_string(ck.feature_dim) + " features, dataset has " +
                       std::to_string(g.feature_dim()));
    if (split.num_known() != ck.model.num_known())
      throw UsageError("checkpoint " + path.string() + " has K=" +
                       std::to_string(ck.model.num_known()) +
                       " known classes but the split provides K=" +
                       std::to_string(split.num_known()));
    for (std::size_t c : split.id_classes)
      if (c >= g.num_classes)
        throw UsageError("checkpoint " + path.string() + " was trained on class " +
                         std::to_string(c) + ", dataset has only C=" +
                         std::to_string(g.num_classes));
    try {
      graph::ValidateSplit(g, split);
    } catch (const graph::GraphError& e) {
      throw UsageError("split does not fit the dataset: " + std::string(e.what()));
    }
    if (ck.dataset_fingerprint != training::GraphFingerprint(g))
      log << "warning: " << path.string() << " was trained on a different dataset ("
          << ck.dataset_name << ")\n";

    training::PreparedData data = training::Prepare(g, split);
    const training::Inference inf = training::Infer(ck.model, data, ck.config.bn_eps);
    eval::EvalReport r = eval::Evaluate(inf.scores, g, data.split);
    r.seed = ck.config.seed;
    r.config_hash = training::ConfigHash(ck.config);
    if (o.baselines) {
      eval::BaselineOptions bo;
      bo.seed = ck.config.seed;
      bo.epochs = o.baseline_epochs;
      const auto logits = eval::TrainBaselineGcn(g, data.norm, data.split, bo);
      eval::AddBaselines(r, eval::ScoreLogits(logits), g, data.split);
    }
    r.wall_seconds = Seconds(start);
    std::vector<std::size_t> ids(g.num_nodes());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    const fs::path scores_path =
        o.checkpoints.size() == 1 ? out / "scores.csv"
                                  : out / ("seed_" + std::to_string(r.seed)) / "scores.csv";
    manifest.Write(scores_path, evidential::ScoresToCsv(inf.scores, ids));
    inputs.push_back({{"path", path.string()}, {"hash", HashFile(path)}, {"seed", r.seed}});
    log << "seed " << r.seed << ": acc=" << FormatReal(r.evinet.acc)
        << " aurc=" << FormatReal(r.evinet.aurc)
        << " auroc=" << (r.evinet.auroc ? FormatReal(*r.evinet.auroc) : std::string("-"))
        << " fpr95=" << (r.evinet.fpr95 ? FormatReal(*r.evinet.fpr95) : std::string("-"))
        << "\n";
    reports.push_back(std::move(r));
  }
  const eval::Aggregate agg = eval::AggregateReports(reports);
  manifest.Write(out / "report.json", eval::ReportsToJson(reports, agg));
  manifest.Write(out / "curves.csv", eval::CurvesCsv(reports));
  manifest.Write(out / "table.csv", eval::AggregateTableCsv(agg));
  json seeds = json::array();
  for (const auto& r : reports) seeds.push_back(r.seed);
  manifest["seeds"] = seeds;
  manifest["checkpoints"] = inputs;
  manifest.Finish();
  return kExitOk;
}

TrainConfig ApplyVariant(TrainConfig c, const std::string& v) {
  auto& a = c.ablation;
  if (v == "a") {
    a = {false, false, true};
  } else if (v == "b") {
    a = {true, false, false};
  } else if (v == "c") {
    a = {true, true, false};
  } else if (v == "d") {
    a = {true, false, true};
  } else if (v == "e") {
    a = {true, true, true};
  } else if (v == "no_at") {
    a = {true, true, true};
    c.epochs_p1 *= c.rounds;
    c.epochs_p2 *= c.rounds;
    c.rounds = 1;
  } else {
    throw UsageError("unknown ablation variant '" + v + "' (expected a, b, c, d, e, no_at)");
  }
  return c;
}

int CmdAblate(const AblateOptions& o, std::ostream& log) {
  if (o.variants.empty()) throw UsageError("no ablation variants given");
  if (o.seeds.empty()) throw UsageError("no seeds given");
  const TrainConfig base = training::LoadConfig(o.config);
  for (const auto& v : o.variants) ApplyVariant(base, v);
  const graph::Graph g = LoadGraph(o.dataset, o.zscore);
  const fs::path out = ResolveOutput(o.out);
  Manifest manifest("ablate", out);
  manifest["config"] = ConfigInfo(o.config, base);
  manifest["dataset"] = DatasetInfo(o.dataset, g);
  manifest["seeds"] = o.seeds;
  manifest["variants"] = o.variants;

  std::string csv = "variant,m1,m2,ci,alternating,seeds," + MetricColumnsHeader() + "\n";
  for (const auto& v : o.variants) {
    std::vector<eval::EvalReport> reports;
    TrainConfig vc = ApplyVariant(base, v);
    for (std::uint64_t seed : o.seeds) {
      vc.seed = seed;
      training::PreparedData data = training::Prepare(g, training::MakeConfigSplit(g, vc));
      training::TrainResult r = training::TrainAlternating(data, vc);
      reports.push_back(EvaluateModel(r.model, data, vc));
      const auto& m = reports.back().evinet;
      log << "variant " << v << " seed " << seed << ": acc=" << FormatReal(m.acc)
          << " auroc=" << (m.auroc ? FormatReal(*m.auroc) : std::string("-")) << "\n";
    }
    const auto agg = eval::AggregateReports(reports);
    const auto& a = vc.ablation;
    auto flag = [](bool b) { return b ? "1" : "0"; };
    csv += v + "," + flag(a.use_dissonance_reasoning) + "," + flag(a.use_vacuity_reasoning) +
           "," + flag(a.use_context) + "," + flag(vc.rounds > 1) + "," +
           std::to_string(o.seeds.size()) + "," + MetricColumns(agg.at("evinet")) + "\n";
  }
  manifest.Write(out / "ablation.csv", csv);
  manifest.Finish();
  return kExitOk;
}

int CmdScale(const ScaleOptions& o, std::ostream& log) {
  if (o.nodes.empty() || o.densities.empty())
    throw UsageError("scale needs at least one node count and one density");
  for (std::size_t n : o.nodes)
    if (n < 10) throw UsageError("node counts must be at least 10");
  for (Real d : o.densities)
    if (!(d > 0.0 && d < 1.0)) throw UsageError("densities must lie in (0, 1)");
  TrainConfig config;
  if (o.config) {
    config = training::LoadConfig(*o.config);
  } else {
    config.lr_p1 = 0.01;
    config.dropout_p1 = 0.2;
    config.gamma = 55.0;
    config.lr_p2 = 0.001;
    config.dropout_p2 = 0.2;
  }
  config.rounds = 1;
  config.seed = o.seed;
  if (o.epochs) config.epochs_p1 = config.epochs_p2 = *o.epochs;
  config.ood_classes.clear();

  const fs::path out = ResolveOutput(o.out);
  Manifest manifest("scale", out);
  manifest["config"] = {{"resolved", training::ConfigToToml(config)},
                        {"hash", training::ConfigHash(config)}};
  std::string csv = "n,density,m,seconds,status\n";
  for (std::size_t n : o.nodes)
    for (Real d : o.densities) {
      std::string m = "", seconds = "", status = "ok";
      try {
        graph::Graph g = graph::GenerateErdosRenyi(n, d, o.feature_dim, o.seed);
        graph::ZScoreColumns(g.features);
        m = std::to_string(g.num_edges());
        training::PreparedData data = training::Prepare(g, training::MakeConfigSplit(g, config));
        const training::TrainResult r = training::TrainAlternating(data, config);
        seconds = FormatReal(r.round_seconds.at(0));
      } catch (const std::bad_alloc&) {
        status = "out_of_memory";
      } catch (const training::TrainingError& e) {
        status = "diverged";
      }
      log << "n=" << n << " density=" << FormatReal(d) << " m=" << m << " seconds=" << seconds
          << " " << status << "\n";
      csv += std::to_string(n) + "," + FormatReal(d) + "," + m + "," + seconds + "," + status +
             "\n";
    }
  manifest.Write(out / "scale.csv", csv);
  manifest.Finish();
  return kExitOk;
}

int CmdGridSearch(const GridSearchOptions& o, std::ostream& log) {
  if (o.lrs.empty() || o.dropouts.empty() || o.gammas.empty())
    throw UsageError("gridsearch grids must be nonempty");
  const TrainConfig base = training::LoadConfig(o.config);
  const graph::Graph g = LoadGraph(o.dataset, o.zscore);
  const fs::path out = ResolveOutput(o.out);
  Manifest manifest("gridsearch", out);
  manifest["config"] = ConfigInfo(o.config, base);
  manifest["dataset"] = DatasetInfo(o.dataset, g);
  training::PreparedData data = training::Prepare(g, training::MakeConfigSplit(g, base));

  std::string csv =
      "stage,lr_p1,dropout_p1,gamma,lr_p2,dropout_p2,val_acc,val_auroc,val_aurc,selection,"
      "status\n";
  auto run = [&](int stage, const TrainConfig& c) -> std::optional<Real> {
    std::string metrics = ",,,", status = "ok";
    std::optional<Real> sel;
    try {
      const training::TrainResult r = training::TrainAlternating(data, c);
      const auto& m = r.best_metrics;
      sel = m.selection;
      metrics = FormatReal(m.acc) + "," + (m.auroc ? FormatReal(*m.auroc) : std::string()) +
                "," + FormatReal(m.aurc) + "," + FormatReal(m.selection);
    } catch (const training::TrainingError&) {
      status = "diverged";
    }
    csv += std::to_string(stage) + "," + FormatReal(c.lr_p1) + "," + FormatReal(c.dropout_p1) +
           "," + FormatReal(c.gamma) + "," + FormatReal(c.lr_p2) + "," +
           FormatReal(c.dropout_p2) + "," + metrics + "," + status + "\n";
    log << "stage " << stage << " lr_p1=" << FormatReal(c.lr_p1)
        << " dropout_p1=" << FormatReal(c.dropout_p1) << " gamma=" << FormatReal(c.gamma)
        << " lr_p2=" << FormatReal(c.lr_p2) << " dropout_p2=" << FormatReal(c.dropout_p2)
        << " selection=" << (sel ? FormatReal(*sel) : status) << "\n";
    return sel;
  };

  TrainConfig best = base;
  std::optional<Real> best_sel;
  for (Real lr : o.lrs)
    for (Real dr : o.dropouts)
      for (Real gm : o.gammas) {
        TrainConfig c = base;
        c.lr_p1 = lr;
        c.dropout_p1 = dr;
        c.gamma = gm;
        const auto s = run(1, c);
        if (s && (!best_sel || *s > *best_sel)) {
          best_sel = s;
          best = c;
        }
      }
  const TrainConfig stage1 = best;
  for (Real lr : o.lrs)
    for (Real dr : o.dropouts) {
      TrainConfig c = stage1;
      c.lr_p2 = lr;
      c.dropout_p2 = dr;
      const auto s = run(2, c);
      if (s && (!best_sel || *s > *best_sel)) {
        best_sel = s;
        best = c;
      }
    }
  manifest.Write(out / "gridsearch.csv", csv);
  if (!best_sel) {
    manifest.Finish();
    throw training::TrainingError("every grid point diverged", {});
  }
  manifest.Write(out / "best.toml", training::ConfigToToml(best));
  manifest["best_selection"] = *best_sel;
  manifest.Finish();
  return kExitOk;
}

}  // namespace evinet::cli
