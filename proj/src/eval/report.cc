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

#include "evinet/eval/report.h"

#include <cmath>
#include <stdexcept>

#include "evinet/common/file_util.h"
#include "json.hpp"

namespace evinet::eval {
namespace {

using nlohmann::json;

MethodMetrics ComputeMetrics(const std::vector<std::size_t>& pred,
                             const std::vector<std::size_t>& label,
                             const std::vector<Real>& md_score,
                             const std::vector<Real>& id_ood_score,
                             const std::vector<Real>& ood_score) {
  MethodMetrics m;
  m.acc = Accuracy(pred, label);
  std::vector<Real> conf;
  std::vector<bool> correct;
  std::vector<Real> wrong, right;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    conf.push_back(-md_score[i]);
    correct.push_back(pred[i] == label[i]);
    (pred[i] == label[i] ? right : wrong).push_back(md_score[i]);
  }
  m.aurc = Aurc(conf, correct);
  if (!wrong.empty() && !right.empty()) {
    m.md_auroc = Auroc(wrong, right);
    m.md_aupr = Aupr(wrong, right);
  }
  if (!ood_score.empty()) {
    m.fpr95 = FprAtTpr(id_ood_score, ood_score);
    m.auroc = Auroc(ood_score, id_ood_score);
    m.aupr = Aupr(ood_score, id_ood_score);
  }
  return m;
}

std::vector<std::size_t> KnownLabels(const graph::Graph& g, const graph::SplitSpec& split) {
  std::vector<std::size_t> out;
  for (std::size_t i : split.test) out.push_back(*split.KnownIndex(g.labels[i]));
  return out;
}

template <typename T>
std::vector<T> Pick(const std::vector<T>& v, const std::vector<std::size_t>& rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (std::size_t i : rows) out.push_back(v.at(i));
  return out;
}

json MetricsJson(const MethodMetrics& m) {
  json j;
  for (const auto& [k, v] : MetricMap(m)) j[k] = v;
  return j;
}

}  // namespace

EvalReport Evaluate(const evidential::NodeScores& scores, const graph::Graph& g,
                    const graph::SplitSpec& split) {
  if (scores.prediction.size() != g.num_nodes())
    throw std::invalid_argument("Evaluate: scores cover " +
                                std::to_string(scores.prediction.size()) +
                                " nodes, graph has " + std::to_string(g.num_nodes()));
  if (split.test.empty()) throw std::invalid_argument("Evaluate: empty ID test set");
  EvalReport r;
  r.seed = split.seed;
  const auto labels = KnownLabels(g, split);
  const auto pred = Pick(scores.prediction, split.test);
  r.id_dissonance = Pick(scores.dissonance, split.test);
  r.id_vacuity = Pick(scores.vacuity, split.test);
  r.ood_vacuity = Pick(scores.vacuity, split.ood_test);
  for (std::size_t i = 0; i < pred.size(); ++i) r.id_correct.push_back(pred[i] == labels[i]);
  r.evinet = ComputeMetrics(pred, labels, r.id_dissonance, r.id_vacuity, r.ood_vacuity);
  return r;
}

void AddBaselines(EvalReport& report, const BaselineScores& scores,
                  const graph::Graph& g, const graph::SplitSpec& split) {
  const auto labels = KnownLabels(g, split);
  const auto pred = Pick(scores.prediction, split.test);
  for (const auto& [name, values] :
       {std::pair{"maxlogit", &scores.max_logit}, std::pair{"energy", &scores.energy}}) {
    report.baselines[name] = ComputeMetrics(pred, labels, Pick(*values, split.test),
                                            Pick(*values, split.test),
                                            Pick(*values, split.ood_test));
  }
}

std::map<std::string, Real> MetricMap(const MethodMetrics& m) {
  std::map<std::string, Real> out = {
      {"acc", m.acc}, {"aurc", m.aurc}, {"aurc_x1000", m.aurc * 1000.0}};
  if (m.md_auroc) out["md_auroc"] = *m.md_auroc;
  if (m.md_aupr) out["md_aupr"] = *m.md_aupr;
  if (m.fpr95) out["fpr95"] = *m.fpr95;
  if (m.auroc) out["auroc"] = *m.auroc;
  if (m.aupr) out["aupr"] = *m.aupr;
  return out;
}

Aggregate AggregateReports(const std::vector<EvalReport>& reports) {
  Aggregate agg;
  if (reports.empty()) return agg;
  std::map<std::string, std::vector<const MethodMetrics*>> methods;
  for (const auto& r : reports) {
    methods["evinet"].push_back(&r.evinet);
    for (const auto& [name, m] : r.baselines) methods[name].push_back(&m);
  }
  for (const auto& [name, list] : methods) {
    if (list.size() != reports.size()) continue;
    std::map<std::string, std::vector<Real>> values;
    for (const MethodMetrics* m : list)
      for (const auto& [k, v] : MetricMap(*m)) values[k].push_back(v);
    for (const auto& [k, v] : values) {
      if (v.size() != list.size()) continue;
      Real mean = 0.0;
      for (Real x : v) mean += x;
      mean /= static_cast<Real>(v.size());
      Real var = 0.0;
      for (Real x : v) var += (x - mean) * (x - mean);
      agg[name][k] = {mean, std::sqrt(var / static_cast<Real>(v.size()))};
    }
  }
  return agg;
}

std::string ReportsToJson(const std::vector<EvalReport>& reports,
                          const Aggregate& aggregate) {
  json j;
  j["format"] = "evinet-report";
  j["version"] = 1;
  j["runs"] = json::array();
  for (const auto& r : reports) {
    json run;
    run["seed"] = r.seed;
    run["config_hash"] = r.config_hash;
    run["wall_seconds"] = r.wall_seconds;
    run["evinet"] = MetricsJson(r.evinet);
    for (const auto& [name, m] : r.baselines) run["baselines"][name] = MetricsJson(m);
    j["runs"].push_back(run);
  }
  json agg = json::object();
  for (const auto& [method, metrics] : aggregate)
    for (const auto& [k, ms] : metrics) agg[method][k] = {{"mean", ms.mean}, {"std", ms.std}};
  j["aggregate"] = agg;
  j["num_seeds"] = reports.size();
  return j.dump(2) + "\n";
}

std::string AggregateTableCsv(const Aggregate& aggregate) {
  struct Column {
    const char* key;
    const char* header;
    Real scale;
  };
  const Column columns[] = {{"acc", "acc_pct", 100.0},
                            {"aurc_x1000", "aurc_x1000", 1.0},
                            {"fpr95", "fpr95_pct", 100.0},
                            {"auroc", "auroc_pct", 100.0},
                            {"aupr", "aupr_pct", 100.0}};
  std::string out = "method";
  for (const auto& c : columns)
    out += std::string(",") + c.header + "_mean," + c.header + "_std";
  out += '\n';
  for (const auto& [method, metrics] : aggregate) {
    out += method;
    for (const auto& c : columns) {
      const auto it = metrics.find(c.key);
      if (it == metrics.end()) {
        out += ",,";
      } else {
        out += ',' + FormatReal(it->second.mean * c.scale) + ',' +
               FormatReal(it->second.std * c.scale);
      }
    }
    out += '\n';
  }
  return out;
}

std::string CurvesCsv(const std::vector<EvalReport>& reports) {
  std::string out = "curve,seed,x,y\n";
  for (const auto& r : reports) {
    std::vector<Real> conf;
    for (Real d : r.id_dissonance) conf.push_back(-d);
    for (const auto& p : RiskCoverageCurve(conf, r.id_correct))
      out += "risk_coverage," + std::to_string(r.seed) + ',' + FormatReal(p.x) + ',' +
             FormatReal(p.y) + '\n';
    if (!r.ood_vacuity.empty())
      for (const auto& p : RocCurve(r.ood_vacuity, r.id_vacuity))
        out += "roc," + std::to_string(r.seed) + ',' + FormatReal(p.x) + ',' +
               FormatReal(p.y) + '\n';
  }
  return out;
}

}  // namespace evinet::eval
