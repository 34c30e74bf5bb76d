// Copyright 2026 The privlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privlearn/config.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "privlearn/dissemination.h"
#include "privlearn/environment.h"
#include "privlearn/error.h"
#include "privlearn/transition.h"

namespace privlearn {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kConfigError, message);
}

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) Fail(where + " must be an object");
}

void RejectUnknownKeys(const json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) Fail("unknown key '" + where + "." + it.key() + "'");
  }
}

double GetNumber(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) Fail(where + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t GetCount(const json& j, const std::string& key,
                     const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    Fail(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double EpsilonFromJson(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return ParseEpsilon(v.get<std::string>());
  Fail("protocol.epsilon must be a number or \"infinity\"");
}

json EpsilonToJson(double epsilon) {
  if (std::isinf(epsilon)) return "infinity";
  return epsilon;
}

GraphSpec ParseGraph(const json& j) {
  RequireObject(j, "graph");
  RejectUnknownKeys(j, "graph", {"generator", "p", "degree", "path"});
  GraphSpec spec;
  const std::string gen = j.value("generator", std::string("random_regular"));
  if (gen == "erdos_renyi") {
    spec.kind = GraphKind::kErdosRenyi;
  } else if (gen == "random_regular") {
    spec.kind = GraphKind::kRandomRegular;
  } else if (gen == "edge_list") {
    spec.kind = GraphKind::kEdgeList;
  } else {
    Fail("graph.generator must be erdos_renyi, random_regular or edge_list");
  }
  if (j.contains("p")) spec.p = GetNumber(j, "p", "graph");
  if (j.contains("degree")) spec.degree = GetCount(j, "degree", "graph");
  if (j.contains("path")) {
    if (!j["path"].is_string()) Fail("graph.path must be a string");
    spec.path = j["path"].get<std::string>();
  }
  if (spec.kind == GraphKind::kEdgeList && spec.path.empty()) {
    Fail("graph.path is required for edge_list");
  }
  if (spec.kind == GraphKind::kErdosRenyi && !(spec.p > 0.0 && spec.p <= 1.0)) {
    Fail("graph.p must lie in (0, 1]");
  }
  return spec;
}

}  // namespace

double ParseEpsilon(const std::string& text) {
  if (text == "infinity" || text == "inf" || text == "Infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) Fail("malformed epsilon '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    Fail("malformed epsilon '" + text + "'");
  }
}

std::string GChoiceName(GChoice choice) {
  switch (choice) {
    case GChoice::kLogSquared:
      return "log2";
    case GChoice::kSqrt:
      return "sqrt";
    case GChoice::kExplicit:
      return "explicit";
  }
  return "unknown";
}

double ExperimentConfig::GValue() const {
  const double nd = static_cast<double>(n);
  switch (g_choice) {
    case GChoice::kLogSquared:
      return std::log(nd) * std::log(nd);
    case GChoice::kSqrt:
      return std::sqrt(nd);
    case GChoice::kExplicit:
      return g_value;
  }
  return g_value;
}

double ExperimentConfig::TheoreticalH() const {
  return DisseminationParams::TheoreticalH(sigma, protocol.beta);
}

double ExperimentConfig::HValue() const {
  return h_override.has_value() ? *h_override : TheoreticalH();
}

std::size_t ExperimentConfig::WalksPerAgent() const {
  const double product = std::floor(HValue() * GValue());
  if (!std::isfinite(product) || product < 1.0) {
    Fail("h * g(N) must be finite and at least 1");
  }
  return static_cast<std::size_t>(product);
}

double ExperimentConfig::Alpha() const {
  return alpha.has_value() ? *alpha : DefaultAlpha(n);
}

ExperimentConfig ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(std::string("invalid JSON: ") + e.what());
  }
  RequireObject(root, "config");
  RejectUnknownKeys(root, "config",
                    {"graph", "n", "options", "protocol", "dissemination", "run"});

  ExperimentConfig cfg;
  try {
    if (root.contains("graph")) cfg.graph = ParseGraph(root["graph"]);
    if (root.contains("n")) cfg.n = GetCount(root, "n", "config");

    std::optional<std::size_t> m;
    if (root.contains("options")) {
      const json& o = root["options"];
      RequireObject(o, "options");
      RejectUnknownKeys(o, "options", {"m", "etas"});
      if (o.contains("m")) m = GetCount(o, "m", "options");
      if (o.contains("etas")) {
        if (!o["etas"].is_array()) Fail("options.etas must be an array");
        for (const json& v : o["etas"]) {
          if (!v.is_number()) Fail("options.etas entries must be numbers");
          cfg.etas.push_back(v.get<double>());
        }
      }
    }
    if (cfg.etas.empty()) {
      const OptionSet defaults = OptionSet::LinearlySpaced(m.value_or(10));
      cfg.etas.assign(defaults.etas().begin(), defaults.etas().end());
    } else if (m.has_value() && *m != cfg.etas.size()) {
      Fail("options.m disagrees with the length of options.etas");
    }

    if (root.contains("protocol")) {
      const json& p = root["protocol"];
      RequireObject(p, "protocol");
      RejectUnknownKeys(p, "protocol", {"epsilon", "beta", "mu"});
      if (p.contains("epsilon")) cfg.protocol.epsilon = EpsilonFromJson(p["epsilon"]);
      if (p.contains("beta")) cfg.protocol.beta = GetNumber(p, "beta", "protocol");
      if (p.contains("mu")) cfg.protocol.mu = GetNumber(p, "mu", "protocol");
    }

    if (root.contains("dissemination")) {
      const json& d = root["dissemination"];
      RequireObject(d, "dissemination");
      RejectUnknownKeys(d, "dissemination",
                        {"sigma", "h", "g", "slot_cap", "alpha", "gap_estimate",
                         "c_walk", "dense_threshold"});
      if (d.contains("sigma")) cfg.sigma = GetNumber(d, "sigma", "dissemination");
      if (d.contains("h") && !d["h"].is_null()) {
        cfg.h_override = GetNumber(d, "h", "dissemination");
      }
      if (d.contains("g")) {
        const json& g = d["g"];
        if (g.is_number()) {
          cfg.g_choice = GChoice::kExplicit;
          cfg.g_value = g.get<double>();
        } else if (g.is_string() && g.get<std::string>() == "log2") {
          cfg.g_choice = GChoice::kLogSquared;
        } else if (g.is_string() && g.get<std::string>() == "sqrt") {
          cfg.g_choice = GChoice::kSqrt;
        } else {
          Fail("dissemination.g must be \"log2\", \"sqrt\" or a number");
        }
      }
      if (d.contains("slot_cap") && !d["slot_cap"].is_null()) {
        cfg.slot_cap = GetCount(d, "slot_cap", "dissemination");
      }
      if (d.contains("alpha") && !d["alpha"].is_null()) {
        cfg.alpha = GetNumber(d, "alpha", "dissemination");
      }
      if (d.contains("gap_estimate") && !d["gap_estimate"].is_null()) {
        cfg.gap_estimate = GetNumber(d, "gap_estimate", "dissemination");
      }
      if (d.contains("c_walk")) cfg.c_walk = GetNumber(d, "c_walk", "dissemination");
      if (d.contains("dense_threshold")) {
        cfg.dense_threshold = GetCount(d, "dense_threshold", "dissemination");
      }
    }

    if (root.contains("run")) {
      const json& r = root["run"];
      RequireObject(r, "run");
      RejectUnknownKeys(r, "run",
                        {"rounds", "seeds", "output_dir", "per_agent_quality"});
      if (r.contains("rounds")) cfg.rounds = GetCount(r, "rounds", "run");
      if (r.contains("seeds")) {
        if (!r["seeds"].is_array() || r["seeds"].empty()) {
          Fail("run.seeds must be a non-empty array");
        }
        cfg.seeds.clear();
        for (const json& s : r["seeds"]) {
          if (!s.is_number_integer() || s.get<long long>() < 0) {
            Fail("run.seeds entries must be non-negative integers");
          }
          cfg.seeds.push_back(s.get<std::uint64_t>());
        }
      }
      if (r.contains("output_dir")) {
        if (!r["output_dir"].is_string()) Fail("run.output_dir must be a string");
        cfg.output_dir = r["output_dir"].get<std::string>();
      }
      if (r.contains("per_agent_quality")) {
        if (!r["per_agent_quality"].is_boolean()) {
          Fail("run.per_agent_quality must be a boolean");
        }
        cfg.per_agent_quality = r["per_agent_quality"].get<bool>();
      }
    }
  } catch (const json::exception& e) {
    Fail(std::string("malformed config: ") + e.what());
  }

  // Structural validation; theory conditions are only warnings.
  try {
    OptionSet check(cfg.etas);
    cfg.protocol.Validate();
  } catch (const Error& e) {
    Fail(e.what());
  }
  if (cfg.graph.kind != GraphKind::kEdgeList && cfg.n < 3) {
    Fail("n must be at least 3");
  }
  if (!(cfg.sigma > 0.0)) Fail("dissemination.sigma must be positive");
  if (cfg.h_override.has_value() && !(*cfg.h_override > 0.0)) {
    Fail("dissemination.h must be positive");
  }
  if (cfg.g_choice == GChoice::kExplicit && !(cfg.g_value > 0.0)) {
    Fail("dissemination.g must be positive");
  }
  if (cfg.alpha.has_value() && !(*cfg.alpha > 0.0)) {
    Fail("dissemination.alpha must be positive");
  }
  if (cfg.gap_estimate.has_value() &&
      !(*cfg.gap_estimate > 0.0 && *cfg.gap_estimate <= 1.0)) {
    Fail("dissemination.gap_estimate must lie in (0, 1]");
  }
  if (!(cfg.c_walk > 0.0)) Fail("dissemination.c_walk must be positive");
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string ConfigToJson(const ExperimentConfig& cfg) {
  json root;
  json graph;
  switch (cfg.graph.kind) {
    case GraphKind::kErdosRenyi:
      graph["generator"] = "erdos_renyi";
      graph["p"] = cfg.graph.p;
      break;
    case GraphKind::kRandomRegular:
      graph["generator"] = "random_regular";
      graph["degree"] = cfg.graph.degree;
      break;
    case GraphKind::kEdgeList:
      graph["generator"] = "edge_list";
      graph["path"] = cfg.graph.path;
      break;
  }
  root["graph"] = graph;
  root["n"] = cfg.n;
  root["options"] = {{"m", cfg.m()}, {"etas", cfg.etas}};
  root["protocol"] = {{"epsilon", EpsilonToJson(cfg.protocol.epsilon)},
                      {"beta", cfg.protocol.beta},
                      {"mu", cfg.protocol.mu}};
  json d;
  d["sigma"] = cfg.sigma;
  d["h"] = cfg.h_override.has_value() ? json(*cfg.h_override) : json(nullptr);
  if (cfg.g_choice == GChoice::kExplicit) {
    d["g"] = cfg.g_value;
  } else {
    d["g"] = GChoiceName(cfg.g_choice);
  }
  d["slot_cap"] = cfg.slot_cap.has_value() ? json(*cfg.slot_cap) : json(nullptr);
  d["alpha"] = cfg.alpha.has_value() ? json(*cfg.alpha) : json(nullptr);
  d["gap_estimate"] =
      cfg.gap_estimate.has_value() ? json(*cfg.gap_estimate) : json(nullptr);
  d["c_walk"] = cfg.c_walk;
  d["dense_threshold"] = cfg.dense_threshold;
  root["dissemination"] = d;
  root["run"] = {{"rounds", cfg.rounds},
                 {"seeds", cfg.seeds},
                 {"output_dir", cfg.output_dir},
                 {"per_agent_quality", cfg.per_agent_quality}};
  return root.dump(2);
}

ConditionReport CheckConditions(const ExperimentConfig& cfg) {
  ConditionReport report;
  OptionSet options(cfg.etas);
  for (const std::string& w : options.Warnings()) report.warnings.push_back(w);
  for (const std::string& w : cfg.protocol.Warnings()) report.warnings.push_back(w);

  const double delta = cfg.protocol.delta();
  report.exploration_ok = !std::isfinite(delta) || 6.0 * cfg.protocol.mu <= delta * delta;
  report.sigma_ok = cfg.sigma >= 11.0;
  if (!report.sigma_ok) {
    report.warnings.push_back("sigma < 11: below the concentration-bound requirement");
  }
  const double nd = static_cast<double>(cfg.n);
  const double g = cfg.GValue();
  report.g_range_ok = std::log(nd) < g && g < nd;
  if (!report.g_range_ok) {
    std::ostringstream msg;
    msg << "g(N) = " << g << " is outside (ln N, N) = (" << std::log(nd) << ", "
        << nd << ")";
    report.warnings.push_back(msg.str());
  }
  report.theoretical_h = !cfg.h_override.has_value() ||
                         *cfg.h_override == cfg.TheoreticalH();
  if (!report.theoretical_h) {
    std::ostringstream msg;
    msg << "h overridden to " << *cfg.h_override << " (theoretical "
        << cfg.TheoreticalH() << "): run is outside theoretical constants";
    report.warnings.push_back(msg.str());
  }
  return report;
}

}  // namespace privlearn
