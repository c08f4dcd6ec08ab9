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

// Brute-force reference computations. Written against the raw network data
// only; nothing here calls into the library's inference code.

#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "qbd/bayesnet.hpp"

namespace qbd::oracle {

/// One row per full assignment, in mixed-radix order with variable 0 least
/// significant.
struct JointTable {
  std::vector<std::vector<std::size_t>> assignments;
  std::vector<double> probs;
};

inline JointTable joint(const BayesianNetwork& net) {
  JointTable t;
  std::size_t total = 1;
  for (const auto& v : net.variables) total *= v.arity;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::size_t> x(net.size());
    std::size_t rest = code;
    for (std::size_t i = 0; i < net.size(); ++i) {
      x[i] = rest % net.variables[i].arity;
      rest /= net.variables[i].arity;
    }
    double p = 1.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
      // row index: parents read as digits, first parent most significant
      std::size_t row = 0;
      for (VarIndex par : net.variables[i].parents) row = row * net.variables[par].arity + x[par];
      p *= net.cpts[i].rows[row][x[i]];
    }
    t.assignments.push_back(std::move(x));
    t.probs.push_back(p);
  }
  return t;
}

inline bool matches(const std::vector<std::size_t>& x, const Evidence& e) {
  for (const auto& [var, value] : e) {
    if (x[var] != value) return false;
  }
  return true;
}

inline double evidence_probability(const BayesianNetwork& net, const Evidence& e) {
  JointTable t = joint(net);
  double s = 0.0;
  for (std::size_t i = 0; i < t.probs.size(); ++i) {
    if (matches(t.assignments[i], e)) s += t.probs[i];
  }
  return s;
}

inline std::vector<double> conditional(const BayesianNetwork& net, VarIndex query, const Evidence& e) {
  JointTable t = joint(net);
  std::vector<double> w(net.variables[query].arity, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < t.probs.size(); ++i) {
    if (!matches(t.assignments[i], e)) continue;
    w[t.assignments[i][query]] += t.probs[i];
    s += t.probs[i];
  }
  for (double& v : w) v /= s;
  return w;
}

inline std::vector<double> expected_utilities(const DecisionProblem& prob) {
  std::vector<double> eu;
  for (std::size_t a = 0; a < prob.network.variables[prob.action].arity; ++a) {
    Evidence e = prob.evidence;
    e[prob.action] = a;
    auto p = conditional(prob.network, prob.outcome, e);
    double s = 0.0;
    for (std::size_t r = 0; r < p.size(); ++r) s += p[r] * prob.utility.values[r];
    eu.push_back(s);
  }
  return eu;
}

inline std::vector<double> normalized(std::vector<double> w) {
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return w;
}

/// Basis index of an assignment: each variable occupies ceil(log2 arity)
/// consecutive qubits, variable 0 lowest.
inline std::size_t basis_index(const BayesianNetwork& net, const std::vector<std::size_t>& x) {
  std::size_t index = 0, shift = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    index |= x[i] << shift;
    shift += static_cast<std::size_t>(std::ceil(std::log2(double(net.variables[i].arity))));
  }
  return index;
}

/// Amplitude-amplification success probability after k iterates.
inline double grover_success(double p, std::size_t k) {
  double s = std::sin((2.0 * double(k) + 1.0) * std::asin(std::sqrt(p)));
  return s * s;
}

inline double tv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace qbd::oracle
