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
 * @file bayesnet.hpp
 * Discrete Bayesian networks: variables in topological order, one
 * conditional probability table per variable, plus the decision-problem
 * roles (action, outcome, evidence, utility) layered on top.
 *
 * Variables are identified by their index in topological order; a variable
 * may only list earlier indices as parents, which makes acyclicity a local
 * check and lets the joint probability be evaluated in a single forward pass.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qbd/error.hpp"

namespace qbd {

using VarIndex = std::size_t;

inline constexpr double kProbabilityTolerance = 1e-9;
inline constexpr std::size_t kDefaultQubitCap = 20;

/// Number of qubits needed to hold `arity` distinct values (at least one).
constexpr std::size_t qubits_for_arity(std::size_t arity) noexcept {
  std::size_t bits = 1;
  while ((std::size_t{1} << bits) < arity) ++bits;
  return bits;
}

struct Variable {
  std::string name;
  std::size_t arity = 2;
  std::vector<VarIndex> parents;
  /// Optional value labels (empty, or exactly `arity` entries).
  std::vector<std::string> labels;

  std::string label(std::size_t value) const {
    if (value < labels.size()) return labels[value];
    return std::to_string(value);
  }
};

/// Rows are indexed by parent assignment in lexicographic order, first
/// parent most significant; each row is a distribution over the variable.
struct Cpt {
  std::vector<std::vector<double>> rows;
};

struct BayesianNetwork {
  std::vector<Variable> variables;
  std::vector<Cpt> cpts;

  std::size_t size() const noexcept { return variables.size(); }

  std::optional<VarIndex> find(const std::string& name) const {
    for (VarIndex i = 0; i < variables.size(); ++i) {
      if (variables[i].name == name) return i;
    }
    return std::nullopt;
  }

  VarIndex index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw DomainError("unknown variable '" + name + "'");
  }

  std::size_t row_count(VarIndex var) const {
    std::size_t rows = 1;
    for (VarIndex p : variables.at(var).parents) rows *= variables.at(p).arity;
    return rows;
  }

  /// CPT row selected by the parent values inside a full assignment.
  std::size_t row_index(VarIndex var, std::span<const std::size_t> assignment) const {
    std::size_t row = 0;
    for (VarIndex p : variables[var].parents) {
      row = row * variables[p].arity + assignment[p];
    }
    return row;
  }

  /// P(var = assignment[var] | parents as in assignment).
  double conditional(VarIndex var, std::span<const std::size_t> assignment) const {
    return cpts[var].rows[row_index(var, assignment)][assignment[var]];
  }

  std::size_t qubit_count() const noexcept {
    std::size_t q = 0;
    for (const auto& v : variables) q += qubits_for_arity(v.arity);
    return q;
  }

  /// Number of full assignments (product of arities).
  std::size_t assignment_count() const {
    std::size_t n = 1;
    for (const auto& v : variables) n *= v.arity;
    return n;
  }

  std::size_t max_in_degree() const noexcept {
    std::size_t m = 0;
    for (const auto& v : variables) m = std::max(m, v.parents.size());
    return m;
  }

  /// True iff `ancestor` reaches `node` along directed edges.
  bool is_ancestor(VarIndex ancestor, VarIndex node) const {
    std::vector<VarIndex> stack(variables.at(node).parents);
    std::set<VarIndex> seen;
    while (!stack.empty()) {
      VarIndex v = stack.back();
      stack.pop_back();
      if (v == ancestor) return true;
      if (!seen.insert(v).second) continue;
      for (VarIndex p : variables[v].parents) stack.push_back(p);
    }
    return false;
  }
};

/// Observed assignments, keyed by variable index.
using Evidence = std::map<VarIndex, std::size_t>;

struct UtilityTable {
  std::vector<double> values;

  double total() const noexcept {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

struct DecisionProblem {
  BayesianNetwork network;
  VarIndex action = 0;
  VarIndex outcome = 0;
  Evidence evidence;
  UtilityTable utility;
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::optional<VarIndex> variable;
  std::string message;
};

inline std::string describe(const Violation& v, const BayesianNetwork* net = nullptr) {
  std::string out = v.severity == Severity::Warning ? "warning: " : "error: ";
  if (v.variable) {
    out += "variable " + std::to_string(*v.variable);
    if (net && *v.variable < net->size()) out += " ('" + net->variables[*v.variable].name + "')";
    out += ": ";
  }
  return out + v.message;
}

inline bool has_errors(std::span<const Violation> violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

/// Every violated structural invariant of `net`; empty iff the network is
/// valid. Violations are data: this never throws.
inline std::vector<Violation> validate(const BayesianNetwork& net,
                                       std::size_t qubit_cap = kDefaultQubitCap) {
  std::vector<Violation> out;
  auto error = [&](std::optional<VarIndex> var, std::string msg) {
    out.push_back({Severity::Error, var, std::move(msg)});
  };

  if (net.variables.empty()) error(std::nullopt, "network has no variables");
  if (net.cpts.size() != net.variables.size()) {
    error(std::nullopt, "expected one CPT per variable (" + std::to_string(net.variables.size()) +
                            " variables, " + std::to_string(net.cpts.size()) + " CPTs)");
    return out;
  }

  std::set<std::string> names;
  for (VarIndex i = 0; i < net.size(); ++i) {
    const Variable& var = net.variables[i];
    if (var.name.empty()) error(i, "empty variable name");
    else if (!names.insert(var.name).second) error(i, "duplicate variable name '" + var.name + "'");
    if (var.arity < 2) error(i, "arity must be at least 2, got " + std::to_string(var.arity));
    if (!var.labels.empty() && var.labels.size() != var.arity) {
      error(i, "expected " + std::to_string(var.arity) + " value labels, got " +
                   std::to_string(var.labels.size()));
    }

    bool parents_ok = true;
    std::set<VarIndex> seen;
    for (VarIndex p : var.parents) {
      if (p >= i) {
        error(i, "parent index " + std::to_string(p) + " is not earlier in topological order");
        parents_ok = false;
      } else if (!seen.insert(p).second) {
        error(i, "parent index " + std::to_string(p) + " listed twice");
      }
    }
    if (!parents_ok) continue;

    const Cpt& cpt = net.cpts[i];
    std::size_t expected_rows = net.row_count(i);
    if (cpt.rows.size() != expected_rows) {
      error(i, "expected " + std::to_string(expected_rows) + " CPT rows, got " +
                   std::to_string(cpt.rows.size()));
      continue;
    }
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      const auto& row = cpt.rows[r];
      if (row.size() != var.arity) {
        error(i, "CPT row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                     " entries, expected " + std::to_string(var.arity));
        continue;
      }
      double sum = 0.0;
      bool in_range = true;
      for (double p : row) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) in_range = false;
        sum += p;
      }
      if (!in_range) error(i, "CPT row " + std::to_string(r) + " has an entry outside [0, 1]");
      if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        error(i, "CPT row " + std::to_string(r) + " sums to " + std::to_string(sum) + ", not 1");
      }
    }
  }

  std::size_t q = net.qubit_count();
  if (q > qubit_cap) {
    error(std::nullopt, "network needs " + std::to_string(q) + " qubits, cap is " +
                            std::to_string(qubit_cap));
  }
  return out;
}

/// Throws ValidationError carrying the first violation, if any.
inline void require_valid(const BayesianNetwork& net, std::size_t qubit_cap = kDefaultQubitCap) {
  auto violations = validate(net, qubit_cap);
  if (!violations.empty()) throw ValidationError(describe(violations.front(), &net));
}

inline void check_evidence(const BayesianNetwork& net, const Evidence& evidence) {
  for (const auto& [var, value] : evidence) {
    if (var >= net.size()) throw DomainError("evidence on unknown variable " + std::to_string(var));
    if (value >= net.variables[var].arity) {
      throw DomainError("evidence value " + std::to_string(value) + " out of range for '" +
                        net.variables[var].name + "'");
    }
  }
}

/// Product of CPT entries along a full assignment.
inline double joint_probability(const BayesianNetwork& net, std::span<const std::size_t> assignment) {
  if (assignment.size() != net.size()) {
    throw DomainError("assignment has " + std::to_string(assignment.size()) + " values, network has " +
                      std::to_string(net.size()) + " variables");
  }
  for (VarIndex i = 0; i < net.size(); ++i) {
    if (assignment[i] >= net.variables[i].arity) {
      throw DomainError("value " + std::to_string(assignment[i]) + " out of range for '" +
                        net.variables[i].name + "'");
    }
  }
  double p = 1.0;
  for (VarIndex i = 0; i < net.size(); ++i) p *= net.conditional(i, assignment);
  return p;
}

/// Advances a mixed-radix counter over the network's arities; returns false
/// after the last assignment.
inline bool next_assignment(const BayesianNetwork& net, std::vector<std::size_t>& assignment) {
  for (std::size_t i = net.size(); i-- > 0;) {
    if (++assignment[i] < net.variables[i].arity) return true;
    assignment[i] = 0;
  }
  return false;
}

inline bool consistent(std::span<const std::size_t> assignment, const Evidence& evidence) {
  for (const auto& [var, value] : evidence) {
    if (assignment[var] != value) return false;
  }
  return true;
}

/// Decision-problem invariants. The uniform-action-prior condition is an
/// error unless `force`, in which case it is reported as a warning.
inline std::vector<Violation> validate_problem(const DecisionProblem& problem,
                                               bool force = false,
                                               std::size_t qubit_cap = kDefaultQubitCap) {
  const BayesianNetwork& net = problem.network;
  std::vector<Violation> out = validate(net, qubit_cap);
  if (has_errors(out)) return out;

  auto error = [&](std::optional<VarIndex> var, std::string msg) {
    out.push_back({Severity::Error, var, std::move(msg)});
  };

  if (problem.action >= net.size()) {
    error(std::nullopt, "action variable index out of range");
    return out;
  }
  if (problem.outcome >= net.size()) {
    error(std::nullopt, "outcome variable index out of range");
    return out;
  }
  if (problem.action == problem.outcome) error(problem.action, "action and outcome are the same variable");

  for (const auto& [var, value] : problem.evidence) {
    if (var >= net.size()) {
      error(std::nullopt, "evidence on unknown variable index " + std::to_string(var));
      continue;
    }
    if (value >= net.variables[var].arity) error(var, "evidence value out of range");
    if (var == problem.action) error(var, "action variable may not be evidence");
    if (var == problem.outcome) error(var, "outcome variable may not be evidence");
    if (net.is_ancestor(problem.action, var)) {
      error(var, "evidence variable is a descendant of the action variable");
    }
  }

  const Variable& action = net.variables[problem.action];
  if (!action.parents.empty()) error(problem.action, "action variable must have no parents");
  if (action.parents.empty() && !net.cpts[problem.action].rows.empty()) {
    const auto& row = net.cpts[problem.action].rows.front();
    double uniform = 1.0 / static_cast<double>(action.arity);
    bool is_uniform = std::all_of(row.begin(), row.end(), [&](double p) {
      return std::abs(p - uniform) <= kProbabilityTolerance;
    });
    if (!is_uniform) {
      out.push_back({force ? Severity::Warning : Severity::Error, problem.action,
                     "action prior is not uniform"});
    }
  }

  const auto& u = problem.utility.values;
  std::size_t n_r = net.variables[problem.outcome].arity;
  if (u.size() != n_r) {
    error(problem.outcome, "utility has " + std::to_string(u.size()) + " entries, outcome arity is " +
                               std::to_string(n_r));
  }
  bool any_positive = false;
  for (double v : u) {
    if (!std::isfinite(v) || v < 0.0) {
      error(problem.outcome, "utility entries must be finite and non-negative");
      break;
    }
    if (v > 0.0) any_positive = true;
  }
  if (!any_positive) error(problem.outcome, "utility needs at least one positive entry");
  return out;
}

inline void require_valid(const DecisionProblem& problem, bool force = false,
                          std::size_t qubit_cap = kDefaultQubitCap) {
  auto violations = validate_problem(problem, force, qubit_cap);
  for (const auto& v : violations) {
    if (v.severity == Severity::Error) throw ValidationError(describe(v, &problem.network));
  }
}

/// U <- U - min(U). Preserves the classical argmax; changes the shape of the
/// utility-weighted action distribution.
inline UtilityTable shift_to_non_negative(UtilityTable utility) {
  if (utility.values.empty()) return utility;
  double lo = *std::min_element(utility.values.begin(), utility.values.end());
  for (double& v : utility.values) v -= lo;
  return utility;
}

}  // namespace qbd
