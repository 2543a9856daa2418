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

#include <iostream>

#include "CLI11.hpp"
#include "evinet/cli/commands.h"
#include "evinet/graph/graph.h"
#include "evinet/training/checkpoint.h"
#include "evinet/training/trainer.h"

namespace evinet::cli {

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"EviNet: evidential open-world node classification", "evinet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kArtifactVersion);

  SynthOptions synth;
  std::size_t synth_features = 0;
  std::uint64_t synth_seed = 0;
  auto* s = app.add_subcommand("synth", "Generate a synthetic dataset (er or ppm)");
  s->add_option("kind", synth.kind, "er (Erdos-Renyi) or ppm (planted partition)")->required();
  s->add_option("--out", synth.out, "Output dataset directory")->required();
  s->add_option("--nodes", synth.nodes, "er: number of nodes");
  s->add_option("--density", synth.density, "er: edge probability in [0, 1)");
  s->add_option("--classes", synth.num_classes, "er: number of uniform labels");
  auto* feat_opt = s->add_option("--features", synth_features, "Feature dimension");
  auto* seed_opt = s->add_option("--seed", synth_seed, "Generator seed");
  s->add_option("--blocks", synth.ppm.blocks, "ppm: number of blocks");
  s->add_option("--block-size", synth.ppm.nodes_per_block, "ppm: nodes per block");
  s->add_option("--p-in", synth.ppm.p_in, "ppm: within-block edge probability");
  s->add_option("--p-out", synth.ppm.p_out, "ppm: cross-block edge probability");
  s->add_option("--separation", synth.ppm.mean_separation, "ppm: norm of block feature means");
  s->add_flag("--binary", synth.binary_features, "Store features as float32 features.bin");

  TrainOptions train;
  auto* t = app.add_subcommand("train", "Train EviNet and write checkpoint, history, manifest");
  t->add_option("--dataset", train.dataset, "Dataset directory")->required();
  t->add_option("--config", train.config, "TOML or JSON config")->required();
  t->add_option("--out", train.out, "Output directory")->required();
  t->add_option("--seeds", train.seeds, "Comma-separated seeds (default: config seed)")
      ->delimiter(',');
  bool train_raw = false;
  t->add_flag("--no-zscore", train_raw, "Use raw features");

  EvalOptions ev;
  std::string eval_split;
  auto* e = app.add_subcommand("eval", "Evaluate checkpoints; one checkpoint per seed");
  e->add_option("--dataset", ev.dataset, "Dataset directory")->required();
  e->add_option("--checkpoint", ev.checkpoints, "Checkpoint file (repeatable)")->required();
  e->add_option("--split", eval_split, "Split file overriding the checkpoint's split");
  e->add_option("--out", ev.out, "Output directory")->required();
  bool no_baselines = false, eval_raw = false;
  e->add_flag("--no-baselines", no_baselines, "Skip the MaxLogit/Energy GCN baselines");
  e->add_option("--baseline-epochs", ev.baseline_epochs, "Baseline GCN epochs");
  e->add_flag("--no-zscore", eval_raw, "Use raw features");

  AblateOptions ab;
  auto* a = app.add_subcommand("ablate", "Train ablation variants and write a comparison table");
  a->add_option("--dataset", ab.dataset, "Dataset directory")->required();
  a->add_option("--config", ab.config, "TOML or JSON config")->required();
  a->add_option("--out", ab.out, "Output directory")->required();
  a->add_option("--variants", ab.variants, "Subset of a,b,c,d,e,no_at")->delimiter(',');
  a->add_option("--seeds", ab.seeds, "Comma-separated seeds")->delimiter(',');
  bool ablate_raw = false;
  a->add_flag("--no-zscore", ablate_raw, "Use raw features");

  ScaleOptions sc;
  std::string scale_config;
  std::size_t scale_epochs = 0;
  auto* c = app.add_subcommand("scale", "Time one training round on Erdos-Renyi graphs");
  c->add_option("--nodes", sc.nodes, "Comma-separated node counts")->delimiter(',');
  c->add_option("--densities", sc.densities, "Comma-separated edge densities")->delimiter(',');
  c->add_option("--config", scale_config, "TOML or JSON config");
  auto* epochs_opt = c->add_option("--epochs", scale_epochs, "Epochs per phase");
  c->add_option("--features", sc.feature_dim, "Feature dimension");
  c->add_option("--seed", sc.seed, "Generator and training seed");
  c->add_option("--out", sc.out, "Output directory")->required();

  GridSearchOptions gs;
  auto* gr = app.add_subcommand("gridsearch", "Staged grid search over lr, dropout and gamma");
  gr->add_option("--dataset", gs.dataset, "Dataset directory")->required();
  gr->add_option("--config", gs.config, "Base TOML or JSON config")->required();
  gr->add_option("--out", gs.out, "Output directory")->required();
  gr->add_option("--lrs", gs.lrs, "Learning-rate grid")->delimiter(',');
  gr->add_option("--dropouts", gs.dropouts, "Dropout grid")->delimiter(',');
  gr->add_option("--gammas", gs.gammas, "Gamma grid (phase 1)")->delimiter(',');
  bool grid_raw = false;
  gr->add_flag("--no-zscore", grid_raw, "Use raw features");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s->parsed()) {
      if (feat_opt->count() > 0) synth.feature_dim = synth.ppm.feature_dim = synth_features;
      if (seed_opt->count() > 0) synth.seed = synth.ppm.seed = synth_seed;
      return CmdSynth(synth, err);
    }
    if (t->parsed()) {
      train.zscore = !train_raw;
      return CmdTrain(train, err);
    }
    if (e->parsed()) {
      if (!eval_split.empty()) ev.split = eval_split;
      ev.baselines = !no_baselines;
      ev.zscore = !eval_raw;
      return CmdEval(ev, err);
    }
    if (a->parsed()) {
      ab.zscore = !ablate_raw;
      return CmdAblate(ab, err);
    }
    if (c->parsed()) {
      if (!scale_config.empty()) sc.config = scale_config;
      if (epochs_opt->count() > 0) sc.epochs = scale_epochs;
      return CmdScale(sc, err);
    }
    if (gr->parsed()) {
      gs.zscore = !grid_raw;
      return CmdGridSearch(gs, err);
    }
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const training::ConfigError& ex) {
    err << "config error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const training::TrainingError& ex) {
    err << "training failed: " << ex.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace evinet::cli
