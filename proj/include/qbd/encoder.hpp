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
 * @file encoder.hpp
 * Compiles a Bayesian network into a state-preparation circuit whose
 * squared amplitudes are the joint distribution.
 *
 * Each variable gets ceil(log2 arity) consecutive qubits, allocated in
 * topological order. For every parent assignment the variable's register is
 * rotated with a binary-subdivision cascade: the top qubit splits the row's
 * mass in two halves, then each lower qubit splits its slice conditioned on
 * the higher qubits already set. Values beyond the arity are padding and
 * receive exactly zero amplitude.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qbd/bayesnet.hpp"
#include "qbd/statevector.hpp"

namespace qbd::encoder {

using qsim::CircuitPlan;
using qsim::Control;
using qsim::CRy;
using qsim::GateOp;
using qsim::QubitRange;

/// Angle t with sin^2(t/2) = p, i.e. 2 asin(sqrt p).
inline double rotation_angle(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
  return 2.0 * std::asin(std::sqrt(p));
}

/// Contiguous registers in variable order.
inline std::vector<QubitRange> layout(const BayesianNetwork& net) {
  std::vector<QubitRange> map;
  std::size_t next = 0;
  for (const auto& v : net.variables) {
    std::size_t width = qubits_for_arity(v.arity);
    map.push_back({next, width});
    next += width;
  }
  return map;
}

/// Controls that select `value` on register `reg`.
inline void append_value_controls(std::vector<Control>& controls, const QubitRange& reg, std::size_t value) {
  for (std::size_t j = 0; j < reg.count; ++j) controls.push_back({reg.first + j, bool((value >> j) & 1U)});
}

/// Emits the cascade that maps |0> on `reg` to sum_v sqrt(probs[v]) |v>,
/// conditioned on `base` controls. probs may be shorter than 2^count; the
/// remainder is padding with zero probability. Emits 2^count - 1 rotations.
inline void emit_distribution(std::vector<GateOp>& ops, const QubitRange& reg,
                              std::span<const double> probs, const std::vector<Control>& base) {
  auto mass = [&](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t v = lo; v < hi && v < probs.size(); ++v) m += probs[v];
    return m;
  };
  // One level per bit, top first; one rotation per assignment h of the bits above.
  for (std::size_t level = 0; level < reg.count; ++level) {
    const std::size_t bit = reg.count - 1 - level;
    const std::size_t block = std::size_t{1} << (bit + 1);  // values sharing the higher bits
    for (std::size_t h = 0; h < (std::size_t{1} << level); ++h) {
      const std::size_t lo = h * block;
      const double total = mass(lo, lo + block);
      const double upper = mass(lo + block / 2, lo + block);
      double p_one = total > 0.0 ? upper / total : 0.0;
      p_one = std::clamp(p_one, 0.0, 1.0);

      CRy op;
      op.target = reg.first + bit;
      op.angle = rotation_angle(p_one);
      op.controls = base;
      for (std::size_t above = bit + 1; above < reg.count; ++above) {
        op.controls.push_back({reg.first + above, bool((lo >> above) & 1U)});
      }
      ops.push_back(std::move(op));
    }
  }
}

/// One uniformly-controlled block per variable, one cascade per parent
/// assignment.
inline CircuitPlan encode(const BayesianNetwork& net, std::size_t qubit_cap = kDefaultQubitCap) {
  require_valid(net, qubit_cap);
  CircuitPlan plan;
  plan.var_map = layout(net);
  plan.qubits = net.qubit_count();

  for (VarIndex i = 0; i < net.size(); ++i) {
    const Variable& var = net.variables[i];
    std::vector<std::size_t> parent_values(var.parents.size(), 0);
    for (std::size_t row = 0; row < net.cpts[i].rows.size(); ++row) {
      // decode row index, first parent most significant
      std::size_t rest = row;
      for (std::size_t k = var.parents.size(); k-- > 0;) {
        std::size_t arity = net.variables[var.parents[k]].arity;
        parent_values[k] = rest % arity;
        rest /= arity;
      }
      std::vector<Control> controls;
      for (std::size_t k = 0; k < var.parents.size(); ++k) {
        append_value_controls(controls, plan.var_map[var.parents[k]], parent_values[k]);
      }
      emit_distribution(plan.ops, plan.var_map[i], net.cpts[i].rows[row], controls);
    }
  }
  return plan;
}

/// Exact number of rotations encode() emits.
inline std::size_t op_count(const BayesianNetwork& net) {
  std::size_t n = 0;
  for (VarIndex i = 0; i < net.size(); ++i) {
    n += net.row_count(i) * ((std::size_t{1} << qubits_for_arity(net.variables[i].arity)) - 1);
  }
  return n;
}

/// n * 2^m with n the variable count and m the largest parent set.
inline double encoding_cost(const BayesianNetwork& net) {
  return static_cast<double>(net.size()) * std::ldexp(1.0, static_cast<int>(net.max_in_degree()));
}

}  // namespace qbd::encoder
