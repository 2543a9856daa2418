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

#include "evinet/training/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "evinet/common/file_util.h"
#include "json.hpp"

namespace evinet::training {
namespace {

using nlohmann::json;

struct Value {
  std::variant<bool, double, std::string, std::vector<double>> v;
  bool integral = false;
  int line = 0;
};

using Table = std::map<std::string, Value>;

std::string Where(const std::string& source, int line) {
  return line > 0 ? source + ":" + std::to_string(line) + ": " : source + ": ";
}

std::string Trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string StripComment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

bool ParseNumber(const std::string& text, double& out, bool& integral) {
  std::string t;
  for (char c : text)
    if (c != '_') t += c;
  if (t.empty()) return false;
  const char* b = t.data();
  const char* e = t.data() + t.size();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || p != e || !std::isfinite(out)) return false;
  integral = t.find_first_of(".eE") == std::string::npos;
  return true;
}

Value ParseTomlValue(const std::string& raw, const std::string& where) {
  const std::string s = Trim(raw);
  Value v;
  if (s.empty()) throw ConfigError(where + "missing value");
  if (s == "true" || s == "false") {
    v.v = s == "true";
    return v;
  }
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw ConfigError(where + "unterminated string");
    v.v = s.substr(1, s.size() - 2);
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError(where + "arrays must close on the same line");
    std::vector<double> items;
    bool all_integral = true;
    const std::string body = Trim(s.substr(1, s.size() - 2));
    if (!body.empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = Trim(item);
        if (item.empty()) continue;
        double x;
        bool integral;
        if (!ParseNumber(item, x, integral))
          throw ConfigError(where + "array element '" + item + "' is not a number");
        all_integral = all_integral && integral;
        items.push_back(x);
      }
    }
    v.v = items;
    v.integral = all_integral;
    return v;
  }
  double x;
  bool integral;
  if (!ParseNumber(s, x, integral))
    throw ConfigError(where + "cannot parse value '" + s + "'");
  v.v = x;
  v.integral = integral;
  return v;
}

Table ParseToml(const std::string& text, const std::string& source) {
  Table table;
  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = Where(source, number);
    const std::string s = Trim(StripComment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3)
        throw ConfigError(where + "malformed section header");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = Trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(where + "empty key");
    for (char c : key)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw ConfigError(where + "invalid key '" + key + "'");
    if (table.count(key))
      throw ConfigError(where + "duplicate field '" + key + "' (first set on line " +
                        std::to_string(table[key].line) + ")");
    Value v = ParseTomlValue(s.substr(eq + 1), where);
    v.line = number;
    table[key] = std::move(v);
  }
  return table;
}

int LineOf(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

void FlattenJson(const json& j, const std::string& text, const std::string& source,
                 Table& table) {
  for (const auto& [key, val] : j.items()) {
    const auto pos = text.find("\"" + key + "\"");
    const int line = pos == std::string::npos ? 0 : LineOf(text, pos);
    const std::string where = Where(source, line);
    if (val.is_object()) {
      FlattenJson(val, text, source, table);
      continue;
    }
    if (table.count(key)) throw ConfigError(where + "duplicate field '" + key + "'");
    Value v;
    v.line = line;
    if (val.is_boolean()) {
      v.v = val.get<bool>();
    } else if (val.is_number()) {
      v.v = val.get<double>();
      v.integral = val.is_number_integer();
    } else if (val.is_string()) {
      v.v = val.get<std::string>();
    } else if (val.is_array()) {
      std::vector<double> items;
      bool integral = true;
      for (const auto& x : val) {
        if (!x.is_number())
          throw ConfigError(where + "array field '" + key + "' must hold numbers");
        integral = integral && x.is_number_integer();
        items.push_back(x.get<double>());
      }
      v.v = items;
      v.integral = integral;
    } else {
      throw ConfigError(where + "unsupported value for field '" + key + "'");
    }
    table[key] = std::move(v);
  }
}

Table ParseJson(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(Where(source, LineOf(text, e.byte > 0 ? e.byte - 1 : 0)) +
                      "invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source + ": JSON config must be an object");
  Table table;
  FlattenJson(j, text, source, table);
  return table;
}

class Reader {
 public:
  Reader(Table table, std::string source)
      : table_(std::move(table)), source_(std::move(source)) {}

  void Real_(const std::string& key, Real& out, bool required = false) {
    const Value* v = Find(key, required);
    if (!v) return;
    if (!std::holds_alternative<double>(v->v))
      throw ConfigError(Where(source_, v->line) + "field '" + key + "' must be a number");
    out = std::get<double>(v->v);
  }

  template <typename Int>
  void Count(const std::string& key, Int& out) {
    const Value* v = Find(key, false);
    if (!v) return;
    if (!std::holds_alternative<double>(v->v) || !v->integral ||
        std::get<double>(v->v) < 0)
      throw ConfigError(Where(source_, v->line) + "field '" + key +
                        "' must be a nonnegative integer");
    out = static_cast<Int>(std::get<double>(v->v));
  }

  void Bool(const std::string& key, bool& out) {
    const Value* v = Find(key, false);
    if (!v) return;
    if (!std::holds_alternative<bool>(v->v))
      throw ConfigError(Where(source_, v->line) + "field '" + key + "' must be true or false");
    out = std::get<bool>(v->v);
  }

  const Value* Array(const std::string& key, bool integral) {
    const Value* v = Find(key, false);
    if (!v) return nullptr;
    if (!std::holds_alternative<std::vector<double>>(v->v) || (integral && !v->integral))
      throw ConfigError(Where(source_, v->line) + "field '" + key + "' must be an array of " +
                        (integral ? "integers" : "numbers"));
    return v;
  }

  void RejectUnknown() const {
    for (const auto& [key, v] : table_)
      if (!used_.count(key))
        throw ConfigError(Where(source_, v.line) + "unknown field '" + key + "'");
  }

  int LineOf(const std::string& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? 0 : it->second.line;
  }

 private:
  const Value* Find(const std::string& key, bool required) {
    used_.insert(key);
    auto it = table_.find(key);
    if (it == table_.end()) {
      if (required) throw ConfigError(source_ + ": missing required field '" + key + "'");
      return nullptr;
    }
    return &it->second;
  }

  Table table_;
  std::string source_;
  std::set<std::string> used_;
};

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError("field '" + field + "' " + why);
  };
  if (!(lr_p1 > 0.0)) fail("lr_p1", "must be > 0");
  if (!(lr_p2 > 0.0)) fail("lr_p2", "must be > 0");
  if (!(dropout_p1 >= 0.0 && dropout_p1 < 1.0)) fail("dropout_p1", "must lie in [0, 1)");
  if (!(dropout_p2 >= 0.0 && dropout_p2 < 1.0)) fail("dropout_p2", "must lie in [0, 1)");
  if (!(gamma > 0.0)) fail("gamma", "must be > 0");
  if (rounds < 1) fail("rounds", "must be >= 1");
  if (embedding_dim == 0) fail("embedding_dim", "must be >= 1");
  if (hidden_dim == 0) fail("hidden_dim", "must be >= 1");
  if (disjunction_dim == 0) fail("disjunction_dim", "must be >= 1");
  if (head_hidden_dim == 0) fail("head_hidden_dim", "must be >= 1");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) fail("adam_beta1", "must lie in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) fail("adam_beta2", "must lie in [0, 1)");
  if (!(adam_eps > 0.0)) fail("adam_eps", "must be > 0");
  if (!(weight_decay >= 0.0)) fail("weight_decay", "must be >= 0");
  if (!(bn_momentum > 0.0 && bn_momentum <= 1.0)) fail("bn_momentum", "must lie in (0, 1]");
  if (!(bn_eps > 0.0)) fail("bn_eps", "must be > 0");
  if (!(ood_val_fraction >= 0.0 && ood_val_fraction <= 1.0))
    fail("ood_val_fraction", "must lie in [0, 1]");
  if (!(split_ratios[0] > 0.0 && split_ratios[1] >= 0.0 && split_ratios[2] >= 0.0))
    fail("split_ratios", "must be nonnegative with a positive train share");
  if (ablation.use_vacuity_reasoning && !ablation.use_dissonance_reasoning)
    fail("use_vacuity_reasoning", "requires use_dissonance_reasoning = true");
}

TrainConfig ParseConfig(const std::string& text, const std::string& source) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool is_json = first != std::string::npos && text[first] == '{';
  Reader r(is_json ? ParseJson(text, source) : ParseToml(text, source), source);
  TrainConfig c;
  r.Real_("lr_p1", c.lr_p1, true);
  r.Real_("dropout_p1", c.dropout_p1, true);
  r.Real_("gamma", c.gamma, true);
  r.Real_("lr_p2", c.lr_p2, true);
  r.Real_("dropout_p2", c.dropout_p2, true);
  r.Count("epochs_p1", c.epochs_p1);
  r.Count("epochs_p2", c.epochs_p2);
  r.Count("rounds", c.rounds);
  r.Count("seed", c.seed);
  r.Count("embedding_dim", c.embedding_dim);
  r.Count("hidden_dim", c.hidden_dim);
  r.Count("disjunction_dim", c.disjunction_dim);
  r.Count("head_hidden_dim", c.head_hidden_dim);
  r.Real_("adam_beta1", c.adam_beta1);
  r.Real_("adam_beta2", c.adam_beta2);
  r.Real_("adam_eps", c.adam_eps);
  r.Real_("weight_decay", c.weight_decay);
  r.Real_("bn_momentum", c.bn_momentum);
  r.Real_("bn_eps", c.bn_eps);
  if (const Value* v = r.Array("ood_classes", true)) {
    c.ood_classes.clear();
    for (double x : std::get<std::vector<double>>(v->v)) {
      if (x < 0)
        throw ConfigError(Where(source, v->line) + "field 'ood_classes' must be nonnegative");
      c.ood_classes.push_back(static_cast<std::size_t>(x));
    }
  }
  r.Real_("ood_val_fraction", c.ood_val_fraction);
  if (const Value* v = r.Array("split_ratios", false)) {
    const auto& items = std::get<std::vector<double>>(v->v);
    if (items.size() != 3)
      throw ConfigError(Where(source, v->line) +
                        "field 'split_ratios' needs three entries (train, val, test)");
    for (int i = 0; i < 3; ++i) c.split_ratios[i] = items[i];
  }
  r.Bool("use_dissonance_reasoning", c.ablation.use_dissonance_reasoning);
  r.Bool("use_vacuity_reasoning", c.ablation.use_vacuity_reasoning);
  r.Bool("use_context", c.ablation.use_context);
  r.Real_("selection_acc_weight", c.selection_acc_weight);
  r.Real_("selection_auroc_weight", c.selection_auroc_weight);
  r.Real_("selection_aurc_weight", c.selection_aurc_weight);
  r.RejectUnknown();
  try {
    c.Validate();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const auto q1 = msg.find('\'');
    const auto q2 = msg.find('\'', q1 + 1);
    const int line = q1 == std::string::npos ? 0 : r.LineOf(msg.substr(q1 + 1, q2 - q1 - 1));
    throw ConfigError(Where(source, line) + msg);
  }
  return c;
}

TrainConfig LoadConfig(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return ParseConfig(text, path.string());
}

std::string ConfigToToml(const TrainConfig& c) {
  auto num = [](Real x) { return FormatReal(x); };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string ood = "[";
  for (std::size_t i = 0; i < c.ood_classes.size(); ++i)
    ood += (i ? ", " : "") + std::to_string(c.ood_classes[i]);
  ood += "]";
  std::string out;
  out += "[phase1]\n";
  out += "lr_p1 = " + num(c.lr_p1) + "\n";
  out += "dropout_p1 = " + num(c.dropout_p1) + "\n";
  out += "gamma = " + num(c.gamma) + "\n";
  out += "epochs_p1 = " + std::to_string(c.epochs_p1) + "\n";
  out += "\n[phase2]\n";
  out += "lr_p2 = " + num(c.lr_p2) + "\n";
  out += "dropout_p2 = " + num(c.dropout_p2) + "\n";
  out += "epochs_p2 = " + std::to_string(c.epochs_p2) + "\n";
  out += "\n[schedule]\n";
  out += "rounds = " + std::to_string(c.rounds) + "\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  out += "\n[model]\n";
  out += "embedding_dim = " + std::to_string(c.embedding_dim) + "\n";
  out += "hidden_dim = " + std::to_string(c.hidden_dim) + "\n";
  out += "disjunction_dim = " + std::to_string(c.disjunction_dim) + "\n";
  out += "head_hidden_dim = " + std::to_string(c.head_hidden_dim) + "\n";
  out += "bn_momentum = " + num(c.bn_momentum) + "\n";
  out += "bn_eps = " + num(c.bn_eps) + "\n";
  out += "\n[optimizer]\n";
  out += "adam_beta1 = " + num(c.adam_beta1) + "\n";
  out += "adam_beta2 = " + num(c.adam_beta2) + "\n";
  out += "adam_eps = " + num(c.adam_eps) + "\n";
  out += "weight_decay = " + num(c.weight_decay) + "\n";
  out += "\n[split]\n";
  out += "ood_classes = " + ood + "\n";
  out += "ood_val_fraction = " + num(c.ood_val_fraction) + "\n";
  out += "split_ratios = [" + num(c.split_ratios[0]) + ", " + num(c.split_ratios[1]) +
         ", " + num(c.split_ratios[2]) + "]\n";
  out += "\n[ablation]\n";
  out += "use_dissonance_reasoning = " + flag(c.ablation.use_dissonance_reasoning) + "\n";
  out += "use_vacuity_reasoning = " + flag(c.ablation.use_vacuity_reasoning) + "\n";
  out += "use_context = " + flag(c.ablation.use_context) + "\n";
  out += "\n[selection]\n";
  out += "selection_acc_weight = " + num(c.selection_acc_weight) + "\n";
  out += "selection_auroc_weight = " + num(c.selection_auroc_weight) + "\n";
  out += "selection_aurc_weight = " + num(c.selection_aurc_weight) + "\n";
  return out;
}

std::string ConfigHash(const TrainConfig& config) {
  return HexDigest(Fnv1a64(ConfigToToml(config)));
}

std::vector<std::size_t> ResolveOodClasses(const TrainConfig& config,
                                           std::size_t num_classes) {
  if (!config.ood_classes.empty()) return config.ood_classes;
  const std::size_t count = std::max<std::size_t>(1, num_classes / 3);
  std::vector<std::size_t> out;
  for (std::size_t c = num_classes - std::min(count, num_classes); c < num_classes; ++c)
    out.push_back(c);
  return out;
}

}  // namespace evinet::training
