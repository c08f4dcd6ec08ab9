// Copyright 2026 The qbd Authors
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

/**
 * @file model_io.hpp
 * JSON model documents.
 *
 *   {
 *     "nodes": [ {"name": "L", "arity": 2, "values": ["true", "false"],
 *                 "parents": [], "cpt": [[0.8, 0.2]]}, ... ],
 *     "action": "A", "outcome": "R",
 *     "evidence": {"L": 1},
 *     "utility": [7, 3]
 *   }
 *
 * CPT rows follow lexicographic parent-assignment order, first parent most
 * significant. `values` is optional; when present, evidence may name a
 * value by label instead of index. `action`, `outcome`, `evidence` and
 * `utility` are optional at the document level and required only when the
 * model is used as a decision problem.
 */

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qbd/bayesnet.hpp"

namespace qbd {

struct Model {
  BayesianNetwork network;
  std::optional<VarIndex> action;
  std::optional<VarIndex> outcome;
  Evidence evidence;
  std::optional<UtilityTable> utility;

  bool is_decision_problem() const { return action && outcome && utility; }

  DecisionProblem decision_problem() const {
    if (!action) throw ValidationError("model does not declare an action variable");
    if (!outcome) throw ValidationError("model does not declare an outcome variable");
    if (!utility) throw ValidationError("model does not declare a utility table");
    return DecisionProblem{network, *action, *outcome, evidence, *utility};
  }
};

namespace detail {

using nlohmann::json;

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void fail(const std::string& locus, const std::string& msg) {
  throw ParseError(locus + ": " + msg);
}

inline const json& member(const json& obj, const char* key, const std::string& locus) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(locus, std::string("missing required field '") + key + "'");
  return *it;
}

inline double number(const json& j, const std::string& locus) {
  if (!j.is_number()) fail(locus, "expected a number");
  return j.get<double>();
}

inline std::size_t resolve_value(const Variable& var, const json& j, const std::string& locus) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) {
    auto v = j.get<std::size_t>();
    if (v >= var.arity) fail(locus, "value " + std::to_string(v) + " out of range for '" + var.name + "'");
    return v;
  }
  if (j.is_string()) {
    const auto& label = j.get_ref<const std::string&>();
    for (std::size_t v = 0; v < var.labels.size(); ++v) {
      if (var.labels[v] == label) return v;
    }
    fail(locus, "'" + var.name + "' has no value labelled '" + label + "'");
  }
  fail(locus, "expected a value index or label");
}

}  // namespace detail

/// Resolves NAME=VALUE style input where VALUE is an index or a declared label.
inline std::size_t parse_value(const Variable& var, const std::string& text) {
  for (std::size_t v = 0; v < var.labels.size(); ++v) {
    if (var.labels[v] == text) return v;
  }
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    std::size_t v = std::stoul(text);
    if (v < var.arity) return v;
    throw DomainError("value " + text + " out of range for '" + var.name + "'");
  }
  throw DomainError("'" + var.name + "' has no value '" + text + "'");
}

/// Structural parse only: shapes, names and references are checked, CPT
/// sums are not (see validate()).
inline Model parse_model(const std::string& text) {
  using detail::fail;
  using detail::json;
  using detail::member;

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(detail::line_col(text, e.byte) + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  Model model;
  BayesianNetwork& net = model.network;

  const json& nodes = member(doc, "nodes", "document");
  if (!nodes.is_array()) fail("nodes", "expected an array");

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& node = nodes[i];
    std::string locus = "nodes[" + std::to_string(i) + "]";
    if (!node.is_object()) fail(locus, "expected an object");

    Variable var;
    const json& name = member(node, "name", locus);
    if (!name.is_string()) fail(locus + ".name", "expected a string");
    var.name = name.get<std::string>();
    locus += " ('" + var.name + "')";
    if (net.find(var.name)) fail(locus, "duplicate node name");

    const json& arity = member(node, "arity", locus);
    if (!arity.is_number_integer() || arity.get<long long>() < 2) fail(locus + ".arity", "expected an integer >= 2");
    var.arity = arity.get<std::size_t>();

    if (auto it = node.find("values"); it != node.end()) {
      if (!it->is_array() || it->size() != var.arity) {
        fail(locus + ".values", "expected " + std::to_string(var.arity) + " labels");
      }
      for (const auto& label : *it) {
        if (!label.is_string()) fail(locus + ".values", "labels must be strings");
        var.labels.push_back(label.get<std::string>());
      }
    }

    if (auto it = node.find("parents"); it != node.end()) {
      if (!it->is_array()) fail(locus + ".parents", "expected an array of names");
      for (const auto& p : *it) {
        if (!p.is_string()) fail(locus + ".parents", "parent names must be strings");
        auto idx = net.find(p.get<std::string>());
        if (!idx) fail(locus + ".parents", "parent '" + p.get<std::string>() + "' is not an earlier node");
        var.parents.push_back(*idx);
      }
    }

    net.variables.push_back(var);
    const json& cpt = member(node, "cpt", locus);
    if (!cpt.is_array()) fail(locus + ".cpt", "expected an array of rows");
    std::size_t rows = net.row_count(i);
    if (cpt.size() != rows) {
      fail(locus + ".cpt", "expected " + std::to_string(rows) + " rows, got " + std::to_string(cpt.size()));
    }
    Cpt table;
    for (std::size_t r = 0; r < cpt.size(); ++r) {
      std::string row_locus = locus + ".cpt[" + std::to_string(r) + "]";
      if (!cpt[r].is_array()) fail(row_locus, "expected an array of probabilities");
      if (cpt[r].size() != var.arity) {
        fail(row_locus, "expected " + std::to_string(var.arity) + " probabilities, got " +
                            std::to_string(cpt[r].size()));
      }
      std::vector<double> row;
      for (const auto& p : cpt[r]) row.push_back(detail::number(p, row_locus));
      table.rows.push_back(std::move(row));
    }
    net.cpts.push_back(std::move(table));
  }

  auto role = [&](const char* key) -> std::optional<VarIndex> {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) fail(key, "expected a node name");
    auto idx = net.find(it->get<std::string>());
    if (!idx) fail(key, "unknown node '" + it->get<std::string>() + "'");
    return idx;
  };
  model.action = role("action");
  model.outcome = role("outcome");

  if (auto it = doc.find("evidence"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) fail("evidence", "expected an object of name: value");
    for (const auto& [name, value] : it->items()) {
      auto idx = net.find(name);
      if (!idx) fail("evidence", "unknown node '" + name + "'");
      model.evidence[*idx] = detail::resolve_value(net.variables[*idx], value, "evidence." + name);
    }
  }

  if (auto it = doc.find("utility"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) fail("utility", "expected an array of numbers");
    UtilityTable u;
    for (std::size_t i = 0; i < it->size(); ++i) {
      u.values.push_back(detail::number((*it)[i], "utility[" + std::to_string(i) + "]"));
    }
    if (model.outcome && u.values.size() != net.variables[*model.outcome].arity) {
      fail("utility", "expected " + std::to_string(net.variables[*model.outcome].arity) +
                          " entries (outcome arity), got " + std::to_string(u.values.size()));
    }
    model.utility = std::move(u);
  }
  return model;
}

/// parse_model followed by network validation; throws the first violation.
inline Model load_model(const std::string& text, std::size_t qubit_cap = kDefaultQubitCap) {
  Model model = parse_model(text);
  require_valid(model.network, qubit_cap);
  check_evidence(model.network, model.evidence);
  return model;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

inline nlohmann::json model_to_json(const Model& model) {
  using nlohmann::json;
  const BayesianNetwork& net = model.network;
  json nodes = json::array();
  for (VarIndex i = 0; i < net.size(); ++i) {
    const Variable& var = net.variables[i];
    json node;
    node["name"] = var.name;
    node["arity"] = var.arity;
    if (!var.labels.empty()) node["values"] = var.labels;
    json parents = json::array();
    for (VarIndex p : var.parents) parents.push_back(net.variables[p].name);
    node["parents"] = parents;
    node["cpt"] = i < net.cpts.size() ? json(net.cpts[i].rows) : json::array();
    nodes.push_back(std::move(node));
  }
  json doc;
  doc["nodes"] = std::move(nodes);
  if (model.action) doc["action"] = net.variables[*model.action].name;
  if (model.outcome) doc["outcome"] = net.variables[*model.outcome].name;
  json evidence = json::object();
  for (const auto& [var, value] : model.evidence) evidence[net.variables[var].name] = value;
  doc["evidence"] = std::move(evidence);
  if (model.utility) doc["utility"] = model.utility->values;
  return doc;
}

inline std::string save_model(const Model& model) { return model_to_json(model).dump(2) + "\n"; }

inline Model to_model(const DecisionProblem& problem) {
  return Model{problem.network, problem.action, problem.outcome, problem.evidence, problem.utility};
}

}  // namespace qbd
